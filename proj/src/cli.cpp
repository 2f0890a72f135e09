#include "primdiv/cli.hpp"

#include "primdiv/sequences.hpp"

#include <zlib.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace primdiv::cli {

using nlohmann::json;

Format parse_format(std::string const & s)
{
    if (s == "json")
        return Format::Json;
    if (s == "csv")
        return Format::Csv;
    if (s == "text")
        return Format::Text;
    throw std::invalid_argument("unknown format '" + s + "'");
}

std::string to_string(Format f)
{
    switch (f) {
    case Format::Json:
        return "json";
    case Format::Csv:
        return "csv";
    case Format::Text:
        return "text";
    }
    return "?";
}

void RunConfig::validate() const
{
    if (n_cap < 31)
        throw std::invalid_argument("--n-cap must be at least 31");
    if (prec_start < 16 || prec_start > prec_max)
        throw std::invalid_argument("--prec-start must be >= 16 and <= --prec-max");
    if (jobs < 1)
        throw std::invalid_argument("--jobs must be at least 1");
    if (command == "scan" && (q_lo < 2 || q_lo > q_hi))
        throw std::invalid_argument("--q-lo and --q-hi need 2 <= q-lo <= q-hi");
    if (command == "table2" && q_max < 2)
        throw std::invalid_argument("--q-max must be at least 2");
}

namespace {

std::string timestamp_now()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json with_timestamp(json body, RunConfig const & cfg)
{
    if (cfg.timestamp)
        body["generated_at"] = timestamp_now();
    return body;
}

std::string dact_text(std::optional<double> v)
{
    if (!v)
        return "";
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << *v;
    return s.str();
}

std::string dreq_text(std::optional<long> v)
{
    return v ? std::to_string(*v) : "";
}

int exit_for(verifier::VerificationReport const & r)
{
    switch (r.conclusion.kind) {
    case verifier::ConclusionKind::AllPrimitiveAboveThirty:
        return exit_code::ok;
    case verifier::ConclusionKind::ExceptionFound:
        return exit_code::exception;
    case verifier::ConclusionKind::Inconclusive:
        return r.partial() ? exit_code::partial : exit_code::inconclusive;
    }
    return exit_code::error;
}

json row_json(RowDoc const & r)
{
    json j;
    j["k"] = r.k;
    j["n"] = r.n;
    j["dreq_log_int"] = r.dreq_log_int ? json(*r.dreq_log_int) : json(nullptr);
    j["dact_log_1dp"] = r.dact_log_1dp ? json(*r.dact_log_1dp) : json(nullptr);
    j["margin_ok"] = r.margin_ok;
    return j;
}

RowDoc row_from_json(json const & j)
{
    RowDoc r;
    r.k = j.at("k").get<std::uint64_t>();
    r.n = j.at("n").get<std::uint64_t>();
    if (!j.at("dreq_log_int").is_null())
        r.dreq_log_int = j.at("dreq_log_int").get<long>();
    if (!j.at("dact_log_1dp").is_null())
        r.dact_log_1dp = j.at("dact_log_1dp").get<double>();
    r.margin_ok = j.at("margin_ok").get<bool>();
    return r;
}

} // namespace

RowDoc row_doc(realcf::ConvergentRecord const & row)
{
    RowDoc r;
    r.k = row.k;
    r.n = row.n;
    if (row.d_req_log)
        r.dreq_log_int = row.d_req_log->round_mid();
    if (row.d_act_log)
        r.dact_log_1dp = row.d_act_log->trunc_mid_1dp();
    r.margin_ok = row.verdict == realcf::Verdict::Refuted;
    return r;
}

ReportDoc report_doc(verifier::VerificationReport const & report)
{
    ReportDoc d;
    d.p = report.pair.p;
    d.q = report.pair.q;
    d.kind = to_string(report.pair.kind);
    d.height = report.height.mid_string(20);
    d.n_cap = report.n_cap;
    for (auto const & r : report.ranges)
        d.ranges.push_back({r.lo, r.hi, to_string(r.method), to_string(r.outcome), r.note});
    d.exceptions = report.exceptions_found;
    for (auto const & row : report.convergent_rows)
        d.convergents.push_back(row_doc(row));
    d.conclusion = to_string(report.conclusion.kind);
    d.conclusion_n = report.conclusion.n;
    d.reason = report.conclusion.reason;
    d.partial = report.partial();
    return d;
}

json to_json(ReportDoc const & d)
{
    json j;
    j["pair"] = {{"p", d.p}, {"q", d.q}, {"kind", d.kind}};
    j["height"] = d.height;
    j["n_cap"] = d.n_cap;
    j["ranges"] = json::array();
    for (auto const & r : d.ranges)
        j["ranges"].push_back(
            {{"lo", r.lo}, {"hi", r.hi}, {"method", r.method}, {"outcome", r.outcome}, {"note", r.note}});
    j["exceptions_below_31"] = d.exceptions;
    j["convergents"] = json::array();
    for (auto const & r : d.convergents)
        j["convergents"].push_back(row_json(r));
    j["conclusion"] = {{"kind", d.conclusion}, {"n", d.conclusion_n}, {"reason", d.reason}};
    j["partial"] = d.partial;
    return j;
}

ReportDoc report_from_json(json const & j)
{
    ReportDoc d;
    d.p = j.at("pair").at("p").get<long>();
    d.q = j.at("pair").at("q").get<long>();
    d.kind = j.at("pair").at("kind").get<std::string>();
    d.height = j.at("height").get<std::string>();
    d.n_cap = j.at("n_cap").get<std::uint64_t>();
    for (auto const & r : j.at("ranges"))
        d.ranges.push_back({r.at("lo").get<std::uint64_t>(), r.at("hi").get<std::uint64_t>(),
                            r.at("method").get<std::string>(), r.at("outcome").get<std::string>(),
                            r.at("note").get<std::string>()});
    d.exceptions = j.at("exceptions_below_31").get<std::vector<std::uint64_t>>();
    for (auto const & r : j.at("convergents"))
        d.convergents.push_back(row_from_json(r));
    d.conclusion = j.at("conclusion").at("kind").get<std::string>();
    d.conclusion_n = j.at("conclusion").at("n").get<std::uint64_t>();
    d.reason = j.at("conclusion").at("reason").get<std::string>();
    d.partial = j.at("partial").get<bool>();
    return d;
}

void write_rows_csv(std::ostream & os, std::vector<RowDoc> const & rows)
{
    os << kCsvHeader << '\n';
    for (auto const & r : rows)
        os << r.k << ',' << r.n << ',' << dreq_text(r.dreq_log_int) << ',' << dact_text(r.dact_log_1dp) << '\n';
}

void write_rows_text(std::ostream & os, std::vector<RowDoc> const & rows)
{
    os << std::setw(12) << "k" << std::setw(14) << "n" << std::setw(16) << "log|d_req|" << std::setw(14)
       << "log|d_act|" << '\n';
    for (auto const & r : rows)
        os << std::setw(12) << r.k << std::setw(14) << r.n << std::setw(16) << dreq_text(r.dreq_log_int)
           << std::setw(14) << dact_text(r.dact_log_1dp) << '\n';
}

void write_report_text(std::ostream & os, ReportDoc const & d)
{
    os << "pair (" << d.p << "," << d.q << ") " << d.kind << ", height " << d.height << '\n';
    os << "exceptions with n <= 30:";
    for (auto n : d.exceptions)
        os << ' ' << n;
    os << '\n';
    for (auto const & r : d.ranges)
        os << "  (" << r.lo << ", " << r.hi << "]  " << r.method << "  " << r.outcome
           << (r.note.empty() ? "" : "  " + r.note) << '\n';
    if (!d.convergents.empty())
        write_rows_text(os, d.convergents);
    os << "conclusion: " << d.conclusion;
    if (d.conclusion_n)
        os << " at n=" << d.conclusion_n;
    if (!d.reason.empty())
        os << " (" << d.reason << ")";
    os << '\n';
}

std::string Table2Group::label() const
{
    if (!q_hi)
        return "≥" + std::to_string(q_lo);
    if (*q_hi == q_lo)
        return std::to_string(q_lo);
    return std::to_string(q_lo) + "-" + std::to_string(*q_hi);
}

std::vector<Table2Group> table2_groups(long q_max, PrecisionPolicy const & policy)
{
    if (q_max < 2)
        throw std::invalid_argument("table2_groups: q_max must be >= 2");
    std::vector<Table2Group> out;
    for (long q = 2; q <= q_max; ++q) {
        std::uint64_t nq = verifier::compute_nq(q, policy);
        if (!out.empty() && out.back().nq == nq)
            out.back().q_hi = q;
        else
            out.push_back({q, q, nq});
    }
    if (out.back().nq == 30)
        out.back().q_hi.reset();
    return out;
}

namespace {

constexpr char const * kCacheMagic = "primdiv-cyclotomic 1";

void put_poly(std::ostream & os, char const * tag, IntegerPolynomial const & f)
{
    auto const & c = f.coefficients();
    os << tag << ' ' << c.size() << '\n';
    for (auto const & x : c)
        os << x.get_str() << '\n';
}

std::optional<IntegerPolynomial> get_poly(std::istream & is, std::string const & tag)
{
    std::string line;
    if (!std::getline(is, line))
        return std::nullopt;
    std::istringstream head(line);
    std::string t;
    std::size_t count = 0;
    if (!(head >> t >> count) || t != tag)
        return std::nullopt;
    std::vector<mpz_class> c(count);
    for (auto & x : c) {
        if (!std::getline(is, line) || x.set_str(line, 10) != 0)
            return std::nullopt;
    }
    return IntegerPolynomial(std::move(c));
}

unsigned long crc_of(std::string const & s)
{
    return crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<Bytef const *>(s.data()), static_cast<uInt>(s.size()));
}

} // namespace

std::string serialize_entry(CyclotomicEntry const & e)
{
    std::ostringstream body;
    body << kCacheMagic << '\n' << "n " << e.n << '\n';
    put_poly(body, "phi", e.phi);
    put_poly(body, "g", e.g);
    put_poly(body, "gprime", e.g_deriv);
    std::string s = body.str();
    std::ostringstream crc;
    crc << "crc32 " << std::hex << std::setw(8) << std::setfill('0') << crc_of(s) << '\n';
    return s + crc.str();
}

std::optional<CyclotomicEntry> parse_entry(std::string const & text)
{
    auto const pos = text.rfind("crc32 ");
    if (pos == std::string::npos || (pos > 0 && text[pos - 1] != '\n'))
        return std::nullopt;
    std::string const body = text.substr(0, pos);
    std::string const tail = text.substr(pos + 6);
    if (tail.size() != 9 || tail.back() != '\n')
        return std::nullopt;
    unsigned long stored = 0;
    std::istringstream crc_line(tail);
    if (!(crc_line >> std::hex >> stored) || stored != crc_of(body))
        return std::nullopt;
    std::istringstream is(body);
    std::string line;
    if (!std::getline(is, line) || line != kCacheMagic)
        return std::nullopt;
    CyclotomicEntry e;
    if (!std::getline(is, line) || line.rfind("n ", 0) != 0)
        return std::nullopt;
    e.n = std::stoull(line.substr(2));
    auto phi = get_poly(is, "phi");
    auto g = get_poly(is, "g");
    auto gd = get_poly(is, "gprime");
    if (!phi || !g || !gd)
        return std::nullopt;
    e.phi = std::move(*phi);
    e.g = std::move(*g);
    e.g_deriv = std::move(*gd);
    return e;
}

DirectoryStore::DirectoryStore(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

std::filesystem::path DirectoryStore::path_for(std::uint64_t n) const
{
    return dir_ / ("cyclotomic_" + std::to_string(n) + ".txt");
}

std::optional<CyclotomicEntry> DirectoryStore::load(std::uint64_t n)
{
    std::ifstream in(path_for(n), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    auto e = parse_entry(ss.str());
    if (!e || e->n != n)
        return std::nullopt;
    return e;
}

void DirectoryStore::save(CyclotomicEntry const & entry)
{
    auto const target = path_for(entry.n);
    std::ostringstream tmp_name;
    tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    auto const tmp = dir_ / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize_entry(entry);
        if (!out)
            return;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec)
        std::filesystem::remove(tmp, ec);
}

std::string effective_cache_dir(RunConfig const & cfg)
{
    if (char const * env = std::getenv("PRIMDIV_CACHE_DIR"); env && *env)
        return env;
    return cfg.cache_dir;
}

int cmd_check(RunConfig const & cfg, std::ostream & os)
{
    SequencePair const pair = make_pair(cfg.p, cfg.q);
    if (cfg.n < 2)
        throw std::invalid_argument("--n must be at least 2");
    mpz_class const u = element(pair, cfg.n).value;
    std::string const digits = mpz_class(abs(u)).get_str();
    os << "pair (" << pair.p << "," << pair.q << ") " << to_string(pair.kind) << '\n';
    os << "u_" << cfg.n << " has " << digits.size() << " digits";
    if (digits.size() <= 60)
        os << ": " << u.get_str();
    os << '\n';
    if (cfg.n > 12)
        os << "screen: "
           << (stewart_screen(pair, cfg.n) == ScreenResult::CertifiedPrimitive ? "certified primitive" : "candidate")
           << '\n';
    else
        os << "screen: not applicable for n <= 12\n";
    bool const prim = has_primitive_divisor(pair, cfg.n);
    if (prim) {
        os << "primitive divisor exists\n";
        return exit_code::ok;
    }
    os << "no primitive divisor";
    if (digits.size() <= 60)
        os << " (u_" << cfg.n << " = " << u.get_str() << ")";
    os << '\n';
    return 1;
}

int cmd_verify(RunConfig const & cfg, std::ostream & os)
{
    verifier::Options opt;
    opt.precision = cfg.policy();
    auto const report = verifier::verify_pair(cfg.p, cfg.q, cfg.n_cap, opt);
    auto const doc = report_doc(report);
    switch (cfg.format) {
    case Format::Json:
        os << with_timestamp(to_json(doc), cfg).dump(2) << '\n';
        break;
    case Format::Csv:
        write_rows_csv(os, doc.convergents);
        break;
    case Format::Text:
        write_report_text(os, doc);
        break;
    }
    return exit_for(report);
}

int cmd_table1(RunConfig const & cfg, std::ostream & os)
{
    std::vector<RowDoc> rows;
    bool all_ok = true;
    for (auto const & r : verifier::table1(cfg.policy())) {
        rows.push_back(row_doc(r));
        all_ok = all_ok && rows.back().margin_ok;
    }
    switch (cfg.format) {
    case Format::Json: {
        json j;
        j["pair"] = {{"p", -3}, {"q", 2}};
        j["rows"] = json::array();
        for (auto const & r : rows)
            j["rows"].push_back(row_json(r));
        os << with_timestamp(j, cfg).dump(2) << '\n';
        break;
    }
    case Format::Csv:
        write_rows_csv(os, rows);
        break;
    case Format::Text:
        write_rows_text(os, rows);
        break;
    }
    return all_ok ? exit_code::ok : exit_code::inconclusive;
}

int cmd_table2(RunConfig const & cfg, std::ostream & os)
{
    auto const groups = table2_groups(cfg.q_max, cfg.policy());
    switch (cfg.format) {
    case Format::Json: {
        json j;
        j["rows"] = json::array();
        for (auto const & g : groups)
            j["rows"].push_back({{"q", g.label()}, {"n_q", g.nq}});
        os << with_timestamp(j, cfg).dump(2) << '\n';
        break;
    }
    case Format::Csv:
        os << "q,n_q\n";
        for (auto const & g : groups)
            os << g.label() << ',' << g.nq << '\n';
        break;
    case Format::Text:
        os << std::setw(10) << "q" << std::setw(8) << "n_q" << '\n';
        for (auto const & g : groups)
            os << std::setw(g.q_hi ? 10 : 12) << g.label() << std::setw(8) << g.nq << '\n';
        break;
    }
    return exit_code::ok;
}

int cmd_scan(RunConfig const & cfg, std::ostream & os)
{
    verifier::Options opt;
    opt.precision = cfg.policy();
    auto const reports = verifier::scan(cfg.q_lo, cfg.q_hi, cfg.n_cap, cfg.jobs, opt);
    bool all_ok = true, all_partial = true, any_exception = false;
    for (auto const & r : reports) {
        int code = exit_for(r);
        all_ok = all_ok && code == exit_code::ok;
        all_partial = all_partial && (code == exit_code::ok || code == exit_code::partial);
        any_exception = any_exception || code == exit_code::exception;
    }
    switch (cfg.format) {
    case Format::Json: {
        json j;
        j["q_lo"] = cfg.q_lo;
        j["q_hi"] = cfg.q_hi;
        j["reports"] = json::array();
        for (auto const & r : reports)
            j["reports"].push_back(to_json(report_doc(r)));
        os << with_timestamp(j, cfg).dump(2) << '\n';
        break;
    }
    case Format::Csv:
        os << "q,p,kind,conclusion,convergents\n";
        for (auto const & r : reports)
            os << r.pair.q << ',' << r.pair.p << ',' << to_string(r.pair.kind) << ','
               << to_string(r.conclusion.kind) << ',' << r.convergent_rows.size() << '\n';
        break;
    case Format::Text:
        for (auto const & r : reports)
            os << "(" << r.pair.p << "," << r.pair.q << ") " << to_string(r.conclusion.kind)
               << (r.partial() ? " (partial)" : "") << '\n';
        break;
    }
    if (all_ok)
        return exit_code::ok;
    if (any_exception)
        return exit_code::exception;
    return all_partial ? exit_code::partial : exit_code::inconclusive;
}

int cmd_convergents(RunConfig const & cfg, std::ostream & os)
{
    make_pair(cfg.p, cfg.q);
    long const p = cfg.p, q = cfg.q;
    auto const cs = realcf::convergents([p, q](Precision prec) { return realcf::theta(p, q, prec); }, cfg.n_cap,
                                        cfg.policy());
    switch (cfg.format) {
    case Format::Json: {
        json j;
        j["pair"] = {{"p", p}, {"q", q}};
        j["convergents"] = json::array();
        for (auto const & c : cs)
            j["convergents"].push_back({{"k", c.k}, {"n", c.n}, {"a", c.prefix.back().get_str()}});
        os << with_timestamp(j, cfg).dump(2) << '\n';
        break;
    }
    case Format::Csv:
        os << "k,n,a\n";
        for (auto const & c : cs)
            os << c.k << ',' << c.n << ',' << c.prefix.back().get_str() << '\n';
        break;
    case Format::Text:
        for (auto const & c : cs)
            os << std::setw(14) << c.k << " / " << std::left << std::setw(14) << c.n << std::right
               << "  a = " << c.prefix.back().get_str() << '\n';
        break;
    }
    return exit_code::ok;
}

int cmd_gn_cache(RunConfig const & cfg, std::ostream & os)
{
    std::string const dir = effective_cache_dir(cfg);
    if (dir.empty())
        throw std::invalid_argument("gn-cache needs --cache-dir or PRIMDIV_CACHE_DIR");
    if (cfg.n < 1)
        throw std::invalid_argument("--n must be at least 1");
    DirectoryStore store(dir);
    std::uint64_t written = 0;
    for (std::uint64_t n = 1; n <= cfg.n; ++n) {
        auto entry = default_cache().get(n);
        if (!store.load(n)) {
            store.save(*entry);
            ++written;
        }
    }
    os << written << " files written\n";
    os << "cached Phi_n, g_n, g_n' for n <= " << cfg.n << " in " << dir << '\n';
    return exit_code::ok;
}

int run(RunConfig const & cfg, std::ostream & os, std::ostream & err)
{
    try {
        cfg.validate();
        if (std::string dir = effective_cache_dir(cfg); !dir.empty())
            default_cache().set_store(std::make_shared<DirectoryStore>(dir));
        std::ofstream file;
        std::ostream * out = &os;
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary | std::ios::trunc);
            if (!file)
                throw std::runtime_error("cannot open " + cfg.out);
            out = &file;
        }
        if (cfg.command == "check")
            return cmd_check(cfg, *out);
        if (cfg.command == "verify")
            return cmd_verify(cfg, *out);
        if (cfg.command == "table1")
            return cmd_table1(cfg, *out);
        if (cfg.command == "table2")
            return cmd_table2(cfg, *out);
        if (cfg.command == "scan")
            return cmd_scan(cfg, *out);
        if (cfg.command == "convergents")
            return cmd_convergents(cfg, *out);
        if (cfg.command == "gn-cache")
            return cmd_gn_cache(cfg, *out);
        throw std::invalid_argument("unknown command '" + cfg.command + "'");
    } catch (PairError const & e) {
        err << "invalid pair: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code::invalid;
    } catch (std::invalid_argument const & e) {
        err << "invalid argument: " << e.what() << '\n';
        return exit_code::invalid;
    } catch (std::exception const & e) {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }
}

} // namespace primdiv::cli
