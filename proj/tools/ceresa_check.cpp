#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ceresa/cli_support.hpp"
#include "ceresa/volume.hpp"

namespace {

using namespace ceresa;

cli::OutputFormat parse_format(const std::string& s) {
    if (s == "json") return cli::OutputFormat::json;
    if (s == "csv") return cli::OutputFormat::csv;
    if (s == "human") return cli::OutputFormat::human;
    throw CLI::ValidationError("--output", "expected json, csv, or human");
}

volume::Precision parse_precision(const std::string& s) {
    if (s == "standard") return volume::Precision::standard;
    if (s == "extended") return volume::Precision::extended;
    throw CLI::ValidationError("--precision", "expected standard or extended");
}

int emit_and_score(const volume::Certificate& cert, cli::OutputFormat fmt) {
    switch (fmt) {
        case cli::OutputFormat::json:
            std::cout << cli::certificate_to_json(cert) << "\n";
            break;
        case cli::OutputFormat::csv:
            std::cout << cli::csv_header() << "\n"
                      << cli::certificate_to_csv_row(cert, 0.0) << "\n";
            break;
        case cli::OutputFormat::human:
            std::cout << cli::certificate_to_human(cert);
            break;
    }
    return cert.verdict == volume::Verdict::nontrivial_numerical ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical nontriviality certificates for Ceresa cycles of "
                 "Fermat curves and their cyclic quotients"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name
    auto* cfg_opt = app.set_config("--config");
    cfg_opt->envname("CERESA_CHECK_CONFIG");

    std::string output = "human", precision = "standard";
    double target_frac_error = 1e-9, margin_factor = 10.0;
    int threads = 1;
    app.add_option("--output", output, "json|csv|human")->capture_default_str();
    app.add_option("--precision", precision, "standard|extended")->capture_default_str();
    app.add_option("--target-frac-error", target_frac_error)
        ->check(CLI::Range(1e-12, 1e-3))
        ->capture_default_str();
    app.add_option("--margin-factor", margin_factor)->capture_default_str();
    app.add_option("--threads", threads)->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "emit one certificate");
    verify->require_subcommand(1);
    std::int64_t vf_n = 7, vf_k = 1;
    auto* vfermat = verify->add_subcommand("fermat", "Fermat curve F_N");
    vfermat->add_option("--n", vf_n, "degree N")->required();
    vfermat->add_option("--k", vf_k, "cycle index k")->capture_default_str();
    std::int64_t vq_n = 7, vq_m = 2;
    auto* vquot = verify->add_subcommand("quotient", "cyclic quotient C_N^{1,m}");
    vquot->add_option("--n", vq_n, "prime N = 1 mod 3")->required();
    vquot->add_option("--m", vq_m, "m with m^2+m+1 = 0 mod N")->required();
    bool cross_check = false;
    verify->add_flag("--cross-check", cross_check,
                     "also run the quadrature oracle per term");

    // scan
    auto* scan = app.add_subcommand("scan", "certificates for a range of N");
    std::int64_t s_from = 5, s_to = 50;
    std::string s_k = "1";
    bool redact_timing = false, full = false;
    scan->add_option("--from", s_from)->capture_default_str();
    scan->add_option("--to", s_to)->capture_default_str();
    scan->add_option("--k", s_k, "cycle index, or \"max\"")->capture_default_str();
    scan->add_flag("--redact-timing", redact_timing,
                   "print 0.000 in the seconds column (reproducible output)");
    scan->add_flag("--full", full, "allow the long N <= 1000 style ranges");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the oracle/property suites");
    std::string st_suite = "all";
    int st_trials = 100;
    std::int64_t st_n = 7;
    selftest->add_option("--suite", st_suite,
                         "shuffle|pathproduct|gauss|dixon|dualpath|period|all")
        ->capture_default_str();
    selftest->add_option("--trials", st_trials)->capture_default_str();
    selftest->add_option("--n", st_n)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        volume::EvalOptions opts;
        opts.precision = parse_precision(precision);
        opts.target_frac_error = target_frac_error;
        opts.margin_factor = margin_factor;
        opts.threads = threads;
        opts.cross_check = cross_check;
        const auto fmt = parse_format(output);

        if (verify->parsed()) {
            const auto curve = vfermat->parsed()
                                   ? volume::CurveDesc::fermat(vf_n)
                                   : volume::CurveDesc::quotient(vq_n, vq_m);
            const std::int64_t k = vfermat->parsed() ? vf_k : 1;
            return emit_and_score(volume::make_verdict(curve, k, opts), fmt);
        }
        if (scan->parsed()) {
            cli::ScanConfig cfg;
            cfg.from = s_from;
            cfg.to = s_to;
            if (s_k == "max") {
                cfg.k_max = true;
            } else {
                cfg.k = std::stoll(s_k);
            }
            cfg.precision = opts.precision;
            cfg.target_frac_error = target_frac_error;
            cfg.margin_factor = margin_factor;
            cfg.threads = threads;
            cfg.output = (output == "human") ? cli::OutputFormat::csv : fmt;
            cfg.redact_timing = redact_timing;
            if (!full && cfg.to - cfg.from > 400)
                throw std::invalid_argument(
                    "ranges longer than 400 need --full (long-running scan)");
            return cli::run_scan(cfg, std::cout, std::cerr);
        }
        if (selftest->parsed()) {
            cli::SelftestConfig cfg;
            cfg.suite = st_suite;
            cfg.trials = st_trials;
            cfg.n = st_n;
            return cli::run_selftest(cfg, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
