#include "primdiv/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace primdiv;
using namespace primdiv::cli;
namespace fs = std::filesystem;

namespace {

RunConfig config(std::string command)
{
    RunConfig cfg;
    cfg.command = std::move(command);
    cfg.timestamp = false;
    return cfg;
}

int run_capture(RunConfig const & cfg, std::string & out, std::string & err)
{
    std::ostringstream o, e;
    int code = run(cfg, o, e);
    out = o.str();
    err = e.str();
    return code;
}

fs::path fresh_dir(std::string const & name)
{
    fs::path d = fs::temp_directory_path() / ("primdiv_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    return d;
}

} // namespace

TEST(Format, Parse)
{
    EXPECT_EQ(parse_format("json"), Format::Json);
    EXPECT_EQ(parse_format("csv"), Format::Csv);
    EXPECT_EQ(parse_format("text"), Format::Text);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
    EXPECT_EQ(to_string(Format::Csv), "csv");
}

TEST(RunConfig, Validation)
{
    RunConfig cfg = config("verify");
    EXPECT_NO_THROW(cfg.validate());
    cfg.n_cap = 30;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = config("verify");
    cfg.prec_start = 8192;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = config("scan");
    cfg.q_lo = 5;
    cfg.q_hi = 4;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = config("scan");
    cfg.jobs = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Check, ExitCodesAndMessages)
{
    std::string out, err;
    RunConfig cfg = config("check");
    cfg.p = -3;
    cfg.q = 2;
    cfg.n = 13;
    EXPECT_EQ(run_capture(cfg, out, err), 1);
    EXPECT_NE(out.find("no primitive divisor (u_13 = -1)"), std::string::npos);
    cfg.n = 14;
    EXPECT_EQ(run_capture(cfg, out, err), 0);
    cfg.n = 12;
    EXPECT_EQ(run_capture(cfg, out, err), 1);
    EXPECT_NE(out.find("u_12 = 45"), std::string::npos);
    cfg.p = 0;
    cfg.n = 5;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::invalid);
    EXPECT_NE(err.find("RootOfUnity"), std::string::npos);
}

TEST(Verify, JsonRoundTripAndDeterminism)
{
    RunConfig cfg = config("verify");
    cfg.p = -1;
    cfg.q = 2;
    cfg.n_cap = 5000000;
    std::string a, b, err;
    EXPECT_EQ(run_capture(cfg, a, err), exit_code::partial);
    EXPECT_EQ(run_capture(cfg, b, err), exit_code::partial);
    EXPECT_EQ(a, b);
    auto j = nlohmann::json::parse(a);
    EXPECT_FALSE(j.contains("generated_at"));
    ReportDoc doc = report_from_json(j);
    EXPECT_EQ(report_from_json(to_json(doc)), doc);
    EXPECT_EQ(to_json(doc).dump(2) + "\n", a);
    EXPECT_EQ(doc.p, -1);
    EXPECT_TRUE(doc.partial);
    EXPECT_EQ(doc.conclusion, "Inconclusive");
    ASSERT_FALSE(doc.convergents.empty());
    for (auto const & r : doc.convergents)
        EXPECT_TRUE(r.margin_ok);

    cfg.timestamp = true;
    EXPECT_EQ(run_capture(cfg, a, err), exit_code::partial);
    EXPECT_TRUE(nlohmann::json::parse(a).contains("generated_at"));
}

TEST(Verify, RoundTripWithMissingColumns)
{
    ReportDoc d;
    d.p = 3;
    d.q = 2;
    d.kind = "Lucas";
    d.height = "0.3";
    d.n_cap = 100;
    d.ranges.push_back({30, 100, "StewartScreen", "Pass", ""});
    d.convergents.push_back({1, 2, std::nullopt, -1.5, false});
    d.convergents.push_back({3, 7, -10, std::nullopt, true});
    d.conclusion = "ExceptionFound";
    d.conclusion_n = 42;
    d.reason = "x";
    EXPECT_EQ(report_from_json(nlohmann::json::parse(to_json(d).dump())), d);
}

TEST(Verify, CsvHeaderAndFullRun)
{
    RunConfig cfg = config("verify");
    cfg.p = -3;
    cfg.q = 2;
    cfg.format = Format::Csv;
    std::string out, err;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::ok);
    std::istringstream is(out);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "k,n,dreq_log_trunc,dact_log_trunc");
    std::getline(is, line);
    EXPECT_EQ(line, "497,1291,-116,-12.6");
    int rows = 1;
    std::string last;
    while (std::getline(is, line)) {
        ++rows;
        last = line;
    }
    EXPECT_EQ(rows, 22);
    EXPECT_EQ(last, "6633082188,17229981071,-1438733756,-45.4");
}

TEST(Table1, TenthRow)
{
    RunConfig cfg = config("table1");
    cfg.format = Format::Csv;
    std::string out, err;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::ok);
    EXPECT_NE(out.find("\n870393,2260918,-93683,-28.3\n"), std::string::npos);
}

TEST(Table2, Grouping)
{
    auto groups = table2_groups(21);
    std::vector<std::pair<std::string, std::uint64_t>> got;
    for (auto const & g : groups)
        got.emplace_back(g.label(), g.nq);
    std::vector<std::pair<std::string, std::uint64_t>> const expected = {
        {"2", 1260}, {"3", 330}, {"4", 210}, {"5", 120}, {"6", 90}, {"7", 78},
        {"8", 66},   {"9-11", 60}, {"12-20", 42}, {"≥21", 30}};
    EXPECT_EQ(got, expected);
    auto shorter = table2_groups(10);
    EXPECT_EQ(shorter.back().label(), "9-10");
}

TEST(Scan, CountsAndCsv)
{
    RunConfig cfg = config("scan");
    cfg.q_lo = 2;
    cfg.q_hi = 3;
    cfg.n_cap = 50000;
    cfg.jobs = 2;
    cfg.format = Format::Csv;
    std::string out, err;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::partial);
    std::istringstream is(out);
    std::string line;
    int rows = -1;
    while (std::getline(is, line))
        ++rows;
    EXPECT_EQ(rows, 12);
    cfg.format = Format::Json;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::partial);
    auto j = nlohmann::json::parse(out);
    EXPECT_EQ(j["reports"].size(), 12U);
    for (auto const & r : j["reports"])
        EXPECT_EQ(report_from_json(r), report_from_json(to_json(report_from_json(r))));
}

TEST(Convergents, Listing)
{
    RunConfig cfg = config("convergents");
    cfg.p = -3;
    cfg.q = 2;
    cfg.n_cap = 20000;
    cfg.format = Format::Csv;
    std::string out, err;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::ok);
    EXPECT_NE(out.find("\n497,1291,"), std::string::npos);
    EXPECT_NE(out.find("\n3889,10102,"), std::string::npos);
}

TEST(CacheFile, SerializeParse)
{
    CyclotomicEntry e = *default_cache().get(105);
    std::string text = serialize_entry(e);
    auto back = parse_entry(text);
    ASSERT_TRUE(back);
    EXPECT_EQ(back->n, 105U);
    EXPECT_EQ(back->phi, e.phi);
    EXPECT_EQ(back->g, e.g);
    EXPECT_EQ(back->g_deriv, e.g_deriv);
    EXPECT_NE(text.find("\ncrc32 "), std::string::npos);

    std::string corrupt = text;
    auto pos = corrupt.find("\n-2\n");
    ASSERT_NE(pos, std::string::npos);
    corrupt.replace(pos, 4, "\n-3\n");
    EXPECT_FALSE(parse_entry(corrupt));
    EXPECT_FALSE(parse_entry("garbage"));
}

TEST(CacheFile, DirectoryStoreRecomputesBadFiles)
{
    fs::path dir = fresh_dir("store");
    auto store = std::make_shared<DirectoryStore>(dir);
    PolynomialCache cache(store);
    auto e = cache.get(60);
    EXPECT_TRUE(fs::exists(store->path_for(60)));
    EXPECT_TRUE(fs::exists(store->path_for(30)));
    ASSERT_TRUE(store->load(60));
    EXPECT_EQ(store->load(60)->g, e->g);

    {
        std::ofstream f(store->path_for(60), std::ios::app);
        f << "tampered\n";
    }
    EXPECT_FALSE(store->load(60));
    PolynomialCache again(store);
    EXPECT_EQ(again.get(60)->g, e->g);
    EXPECT_TRUE(store->load(60));
    fs::remove_all(dir);
}

TEST(CacheFile, EnvironmentOverridesFlag)
{
    RunConfig cfg = config("gn-cache");
    cfg.cache_dir = "/nonexistent/flag";
    ::unsetenv("PRIMDIV_CACHE_DIR");
    EXPECT_EQ(effective_cache_dir(cfg), "/nonexistent/flag");
    fs::path dir = fresh_dir("env");
    ::setenv("PRIMDIV_CACHE_DIR", dir.c_str(), 1);
    EXPECT_EQ(effective_cache_dir(cfg), dir.string());
    cfg.n = 40;
    std::string out, err;
    EXPECT_EQ(run_capture(cfg, out, err), exit_code::ok) << err;
    EXPECT_TRUE(fs::exists(dir / "cyclotomic_40.txt"));
    ::unsetenv("PRIMDIV_CACHE_DIR");
    default_cache().set_store(nullptr);
    fs::remove_all(dir);

    RunConfig none = config("gn-cache");
    none.n = 5;
    EXPECT_EQ(run_capture(none, out, err), exit_code::invalid);
}
