#include "primdiv/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using primdiv::cli::RunConfig;

namespace {

void add_pair(CLI::App * sub, RunConfig & cfg)
{
    sub->add_option("--p", cfg.p, "middle coefficient p, |p| < 2q")->required()->allow_extra_args(false);
    sub->add_option("--q", cfg.q, "q >= 2")->required();
}

void add_precision(CLI::App * sub, RunConfig & cfg)
{
    sub->add_option("--prec-start", cfg.prec_start, "starting precision in bits");
    sub->add_option("--prec-max", cfg.prec_max, "precision cap in bits");
}

void add_output(CLI::App * sub, RunConfig & cfg, std::string & format)
{
    sub->add_option("--out", cfg.out, "write output to this file");
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--no-timestamp", [&cfg](std::int64_t) { cfg.timestamp = false; }, "omit generated_at");
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Primitive divisors of Lucas and Lehmer sequences"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "json";
    app.add_option("--cache-dir", cfg.cache_dir, "directory for cached cyclotomic data")->envname("PRIMDIV_CACHE_DIR");
    app.add_option("--jobs", cfg.jobs, "worker threads for scan");

    auto * check = app.add_subcommand("check", "decide whether u_n has a primitive divisor");
    add_pair(check, cfg);
    check->add_option("--n", cfg.n, "index n >= 2")->required();

    auto * verify = app.add_subcommand("verify", "run the full pipeline for one pair");
    add_pair(verify, cfg);
    verify->add_option("--n-cap", cfg.n_cap, "largest index covered");
    add_precision(verify, cfg);
    add_output(verify, cfg, format);

    auto * table1 = app.add_subcommand("table1", "convergent table for (p,q) = (-3,2)");
    add_precision(table1, cfg);
    add_output(table1, cfg, format);

    auto * table2 = app.add_subcommand("table2", "cutoffs n_q by q");
    table2->add_option("--q-max", cfg.q_max, "largest q tabulated");
    add_precision(table2, cfg);
    add_output(table2, cfg, format);

    auto * scan = app.add_subcommand("scan", "verify every valid pair in a q range");
    scan->add_option("--q-lo", cfg.q_lo, "smallest q")->required();
    scan->add_option("--q-hi", cfg.q_hi, "largest q")->required();
    scan->add_option("--n-cap", cfg.n_cap, "largest index covered");
    scan->add_option("--jobs", cfg.jobs, "worker threads");
    add_precision(scan, cfg);
    add_output(scan, cfg, format);

    auto * conv = app.add_subcommand("convergents", "certified convergents of arccos(p/2q)/(2 pi)");
    add_pair(conv, cfg);
    conv->add_option("--n-cap", cfg.n_cap, "largest denominator");
    add_precision(conv, cfg);
    add_output(conv, cfg, format);

    auto * cache = app.add_subcommand("gn-cache", "fill the on-disk cache up to n");
    cache->add_option("--n", cfg.n, "largest n")->required();
    cache->add_option("--cache-dir", cfg.cache_dir, "cache directory")->envname("PRIMDIV_CACHE_DIR");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : primdiv::cli::exit_code::invalid;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = primdiv::cli::parse_format(format);
    return primdiv::cli::run(cfg, std::cout, std::cerr);
}
