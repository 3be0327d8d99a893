#include "ceresa/cli_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ceresa/chen_oracle.hpp"
#include "ceresa/specfun.hpp"

namespace ceresa::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* curve_type_name(volume::CurveType t) {
    return t == volume::CurveType::fermat_curve ? "fermat" : "quotient";
}

} // namespace

std::string certificate_to_json(const volume::Certificate& c) {
    json j;
    j["curve"] = json::object();
    j["curve"]["type"] = curve_type_name(c.curve.type);
    j["curve"]["n"] = c.curve.n;
    if (c.curve.type == volume::CurveType::cyclic_quotient)
        j["curve"]["m"] = c.curve.m;
    else
        j["curve"]["m"] = nullptr;
    j["k"] = c.k;
    j["value"] = c.value.value;
    j["abs_error"] = c.value.abs_error;
    j["frac_distance"] = c.frac_distance;
    j["verdict"] = volume::to_string(c.verdict);
    j["h_terms"] = json::array();
    for (const auto& t : c.h_terms)
        j["h_terms"].push_back({{"h", t.h}, {"value", t.value}, {"abs_error", t.abs_error}});
    j["notes"] = c.notes;
    return j.dump();
}

volume::Certificate certificate_from_json(const std::string& text) {
    const json j = json::parse(text);
    volume::Certificate c;
    const std::string type = j.at("curve").at("type").get<std::string>();
    c.curve.type = (type == "fermat") ? volume::CurveType::fermat_curve
                                      : volume::CurveType::cyclic_quotient;
    c.curve.n = j.at("curve").at("n").get<std::int64_t>();
    c.curve.m = j.at("curve").at("m").is_null() ? 0
                                                : j.at("curve").at("m").get<std::int64_t>();
    c.k = j.at("k").get<std::int64_t>();
    c.value = SeriesValue(j.at("value").get<double>(), j.at("abs_error").get<double>(),
                          0, EvalMethod::closed_form);
    c.frac_distance = j.at("frac_distance").get<double>();
    c.verdict = (j.at("verdict").get<std::string>() == "nontrivial_numerical")
                    ? volume::Verdict::nontrivial_numerical
                    : volume::Verdict::inconclusive;
    for (const auto& t : j.at("h_terms"))
        c.h_terms.push_back({t.at("h").get<std::int64_t>(), t.at("value").get<double>(),
                             t.at("abs_error").get<double>()});
    for (const auto& n : j.at("notes")) c.notes.push_back(n.get<std::string>());
    return c;
}

std::string csv_header() { return "N,k,value,frac_distance,abs_error,verdict,seconds"; }

std::string certificate_to_csv_row(const volume::Certificate& c, double seconds) {
    char sec[32];
    std::snprintf(sec, sizeof sec, "%.3f", seconds);
    std::ostringstream os;
    os << c.curve.n << ',' << c.k << ',' << fmt17(c.value.value) << ','
       << fmt17(c.frac_distance) << ',' << fmt17(c.value.abs_error) << ','
       << volume::to_string(c.verdict) << ',' << sec;
    return os.str();
}

std::string certificate_to_human(const volume::Certificate& c) {
    std::ostringstream os;
    if (c.curve.type == volume::CurveType::fermat_curve)
        os << "Fermat curve F_" << c.curve.n;
    else
        os << "cyclic quotient C_" << c.curve.n << "^{1," << c.curve.m << "}";
    os << ", k = " << c.k << "\n"
       << "  value         = " << fmt17(c.value.value) << "\n"
       << "  abs_error     = " << fmt17(c.value.abs_error) << "\n"
       << "  frac_distance = " << fmt17(c.frac_distance) << "\n"
       << "  verdict       = " << volume::to_string(c.verdict) << "\n";
    for (const auto& n : c.notes) os << "  note: " << n << "\n";
    return os.str();
}

void validate(const ScanConfig& cfg) {
    if (cfg.from < 4 || cfg.to > 1000000 || cfg.from > cfg.to)
        throw std::invalid_argument("scan: N range must lie within [4, 10^6]");
    if (cfg.target_frac_error < 1e-12 || cfg.target_frac_error > 1e-3)
        throw std::invalid_argument("scan: target_frac_error outside [1e-12, 1e-3]");
    if (!cfg.k_max && cfg.k < 1) throw std::invalid_argument("scan: k must be >= 1");
}

int run_scan(const ScanConfig& cfg, std::ostream& data, std::ostream& log) {
    validate(cfg);
    struct Job {
        std::int64_t n, k;
    };
    std::vector<Job> jobs;
    for (std::int64_t n = cfg.from; n <= cfg.to; ++n) {
        const std::int64_t kmax = cfg.k_max ? std::max<std::int64_t>(1, (n - 3) / 2)
                                            : cfg.k;
        const std::int64_t k0 = cfg.k_max ? 1 : cfg.k;
        for (std::int64_t k = k0; k <= kmax; ++k) jobs.push_back({n, k});
    }

    volume::EvalOptions opts;
    opts.precision = cfg.precision;
    opts.target_frac_error = cfg.target_frac_error;
    opts.margin_factor = cfg.margin_factor;
    opts.threads = cfg.threads; // inner parallelism over h-terms

    if (cfg.output == OutputFormat::csv) data << csv_header() << "\n";

    long nontrivial = 0, inconclusive = 0;
    for (const auto& job : jobs) {
        const auto t0 = std::chrono::steady_clock::now();
        volume::Certificate cert;
        try {
            cert = volume::make_verdict(volume::CurveDesc::fermat(job.n), job.k, opts);
        } catch (const std::exception& e) {
            log << "N=" << job.n << " k=" << job.k << " failed: " << e.what() << "\n";
            cert.curve = volume::CurveDesc::fermat(job.n);
            cert.k = job.k;
            cert.value = SeriesValue(0.0, 0.0, 0, EvalMethod::closed_form);
            cert.frac_distance = 0.0;
            cert.verdict = volume::Verdict::inconclusive;
            cert.notes.push_back(std::string("evaluation failed: ") + e.what());
        }
        const double secs =
            cfg.redact_timing
                ? 0.0
                : std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
        if (cert.verdict == volume::Verdict::nontrivial_numerical)
            ++nontrivial;
        else
            ++inconclusive;
        switch (cfg.output) {
            case OutputFormat::csv: data << certificate_to_csv_row(cert, secs) << "\n"; break;
            case OutputFormat::json: data << certificate_to_json(cert) << "\n"; break;
            case OutputFormat::human: data << certificate_to_human(cert); break;
        }
    }
    log << "scan complete: " << jobs.size() << " certificates, " << nontrivial
        << " nontrivial_numerical, " << inconclusive << " inconclusive\n";
    return inconclusive == 0 ? 0 : 2;
}

// ---- selftest suites --------------------------------------------------

namespace {

struct SuiteResult {
    std::string name;
    bool pass = true;
    double max_residual = 0.0;
    std::string detail;
};

Rational random_angle(std::mt19937& rng, int max_den = 12) {
    std::uniform_int_distribution<int> dden(2, max_den);
    const int q = dden(rng);
    std::uniform_int_distribution<int> dnum(1, q - 1);
    return Rational(dnum(rng), q);
}

SuiteResult suite_shuffle(int trials, std::mt19937& rng) {
    SuiteResult r{"shuffle"};
    for (int i = 0; i < trials; ++i) {
        const chen::BetaForm w1(random_angle(rng), random_angle(rng));
        const chen::BetaForm w2(random_angle(rng), random_angle(rng));
        const auto ab = chen::integral_len2(w1, w2);
        const auto ba = chen::integral_len2(w2, w1);
        const auto p = chen::integral_len1(w1) * chen::integral_len1(w2);
        const double residual = std::fabs(ab.value + ba.value - p.value);
        const double budget = 2.0 * (ab.abs_error + ba.abs_error + p.abs_error) + 1e-12;
        r.max_residual = std::max(r.max_residual, residual);
        if (residual > budget) {
            r.pass = false;
            r.detail = "shuffle violated at trial " + std::to_string(i);
            break;
        }
    }
    return r;
}

SuiteResult suite_pathproduct(int trials, std::mt19937& rng) {
    SuiteResult r{"pathproduct"};
    std::uniform_real_distribution<double> dsplit(0.05, 0.95);
    for (int i = 0; i < trials; ++i) {
        const chen::BetaForm w1(random_angle(rng), random_angle(rng));
        const chen::BetaForm w2(random_angle(rng), random_angle(rng));
        const auto c = chen::check_path_product(w1, w2, dsplit(rng));
        r.max_residual = std::max(r.max_residual, c.residual);
        if (!c.pass) {
            r.pass = false;
            r.detail = "path product violated at trial " + std::to_string(i);
            break;
        }
    }
    return r;
}

SuiteResult suite_gauss(int trials, std::mt19937& rng) {
    SuiteResult r{"gauss"};
    for (int i = 0; i < trials; ++i) {
        // 3F2(a,b,c; d,c; 1) reduces to 2F1(a,b;d;1) = Gauss' sum
        const Rational a = random_angle(rng), b = random_angle(rng);
        const Rational c = random_angle(rng);
        const Rational d = a + b + random_angle(rng);
        const auto lhs = specfun::hyp3f2_unit({a, b, c, d, c}, 1e-13);
        const auto rhs = specfun::gamma_product({d, d - a - b}, {d - a, d - b});
        const double residual = std::fabs(lhs.value - rhs.value);
        r.max_residual = std::max(r.max_residual, residual);
        if (residual > 1e-11 * (1.0 + std::fabs(rhs.value))) {
            r.pass = false;
            r.detail = "Gauss reduction mismatch at trial " + std::to_string(i);
            break;
        }
    }
    return r;
}

SuiteResult suite_dixon(int trials, std::mt19937& rng) {
    SuiteResult r{"dixon"};
    const Rational one(1);
    for (int i = 0; i < trials; ++i) {
        const Rational a = random_angle(rng);
        const Rational b = random_angle(rng) * Rational(1, 3);
        const Rational c = random_angle(rng) * Rational(1, 3);
        const Rational half_a = a * Rational(1, 2);
        if (!(one + half_a - b - c).positive()) continue;
        const auto lhs =
            specfun::hyp3f2_unit({a, b, c, one + a - b, one + a - c}, 1e-13);
        const auto rhs = specfun::gamma_product(
            {one + half_a, one + a - b, one + a - c, one + half_a - b - c},
            {one + a, one + half_a - b, one + half_a - c, one + a - b - c});
        const double residual = std::fabs(lhs.value - rhs.value);
        r.max_residual = std::max(r.max_residual, residual);
        if (residual > 1e-11 * (1.0 + std::fabs(rhs.value))) {
            r.pass = false;
            r.detail = "Dixon mismatch at trial " + std::to_string(i);
            break;
        }
    }
    return r;
}

SuiteResult suite_dualpath(std::int64_t N, int trials, std::mt19937& rng) {
    SuiteResult r{"dualpath"};
    const auto all = fermat::index_set(N);
    std::vector<fermat::FermatIndex> holo;
    for (const auto& x : all)
        if (x.is_holo()) holo.push_back(x);
    std::uniform_int_distribution<std::size_t> pick(0, holo.size() - 1);
    for (int i = 0; i < trials; ++i) {
        const auto& x1 = holo[pick(rng)];
        const auto& x2 = holo[pick(rng)];
        const auto closed = volume::closed_iterated_integral(x1, x2, 1e-13);
        const auto raw = chen::integral_len2({x1.alpha().value(), x1.beta().value()},
                                             {x2.alpha().value(), x2.beta().value()},
                                             1e-11);
        const auto b1 = specfun::beta(x1.alpha().value(), x1.beta().value());
        const auto b2 = specfun::beta(x2.alpha().value(), x2.beta().value());
        const double oracle = raw.value / (b1.value * b2.value);
        const double residual = std::fabs(closed.value - oracle);
        r.max_residual = std::max(r.max_residual, residual);
        if (residual > 1e-9) {
            r.pass = false;
            r.detail = "dual-path mismatch at trial " + std::to_string(i);
            break;
        }
    }
    return r;
}

SuiteResult suite_period(int trials, std::mt19937& rng) {
    SuiteResult r{"period"};
    std::uniform_int_distribution<std::int64_t> dn(5, 50);
    for (int i = 0; i < trials; ++i) {
        const std::int64_t N = dn(rng);
        std::uniform_int_distribution<std::int64_t> dr(1, N - 1);
        std::int64_t a = dr(rng), b = dr(rng);
        if ((a + b) % N == 0) b = (b % (N - 1)) + 1;
        if ((a + b) % N == 0) continue;
        const fermat::FermatIndex idx(N, a, b);
        const auto oracle = chen::integral_len1(
            {idx.alpha().value(), idx.beta().value()}, 1e-12);
        const auto bval = specfun::beta(idx.alpha().value(), idx.beta().value());
        const double residual = std::fabs(oracle.value - bval.value) / bval.value;
        r.max_residual = std::max(r.max_residual, residual);
        if (residual > 1e-8) {
            r.pass = false;
            r.detail = "period mismatch at trial " + std::to_string(i);
            break;
        }
    }
    return r;
}

} // namespace

int run_selftest(const SelftestConfig& cfg, std::ostream& out) {
    std::mt19937 rng(static_cast<std::uint32_t>(cfg.seed));
    std::vector<SuiteResult> results;
    const bool all = cfg.suite == "all";
    if (all || cfg.suite == "shuffle") results.push_back(suite_shuffle(cfg.trials, rng));
    if (all || cfg.suite == "pathproduct")
        results.push_back(suite_pathproduct(std::min(cfg.trials, 50), rng));
    if (all || cfg.suite == "gauss") results.push_back(suite_gauss(cfg.trials, rng));
    if (all || cfg.suite == "dixon") results.push_back(suite_dixon(cfg.trials, rng));
    if (all || cfg.suite == "dualpath")
        results.push_back(suite_dualpath(cfg.n, std::min(cfg.trials, 50), rng));
    if (all || cfg.suite == "period")
        results.push_back(suite_period(std::min(cfg.trials, 50), rng));
    if (results.empty()) {
        out << "unknown suite: " << cfg.suite << "\n";
        return 3;
    }
    bool ok = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name
            << "  max residual " << r.max_residual;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 3;
}

} // namespace ceresa::cli
