#ifndef CERESA_VOLUME_HPP
#define CERESA_VOLUME_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ceresa/fermat.hpp"
#include "ceresa/series_value.hpp"

namespace ceresa::volume {

enum class Precision { standard, extended };
enum class Verdict { nontrivial_numerical, inconclusive };

inline const char* to_string(Verdict v) {
    return v == Verdict::nontrivial_numerical ? "nontrivial_numerical" : "inconclusive";
}

struct HTerm {
    std::int64_t h;
    double value;
    double abs_error;
};

struct EvalOptions {
    Precision precision = Precision::standard; // auto-escalates when the
                                               // per-term budget demands it
    double target_frac_error = 1e-9;
    double margin_factor = 10.0;
    int threads = 1;
    bool cross_check = false; // also run the quadrature oracle per term
};

// Closed form for the normalized iterated integral over gamma_0 of
// omega^{a1,b1} omega^{a2,b2}: a Gamma-ratio prefactor times 3F2 at 1.
SeriesValue closed_iterated_integral(const fermat::FermatIndex& x1,
                                     const fermat::FermatIndex& x2,
                                     double target_abs_error = 1e-13,
                                     Precision precision = Precision::extended);

struct TraceValue {
    fermat::IndexTriple triple;
    SeriesValue value;
    std::vector<HTerm> h_terms;
};

// 2 N^2 times the h-sum of iterated integrals over the units keeping the
// first two legs holomorphic; defined only under the Assumption.
TraceValue trace_volume(const fermat::IndexTriple& t,
                        const EvalOptions& opts = {});

struct SumValue {
    SeriesValue value;
    double frac_distance; // min over integers of |value - n|
    std::vector<HTerm> h_terms;
    Precision precision_used;
};

// f(N,k) = k! 2N^{2k} sum over 0<h<N/2, gcd(h,N)=1 of
// Gamma(1-h/N)^4/Gamma(1-2h/N)^4 3F2(h/N,h/N,1-2h/N;1,1;1).
SumValue f_value(std::int64_t N, std::int64_t k, const EvalOptions& opts = {});
// serial reference path, bit-identical to f_value at any thread count
SumValue f_value_serial(std::int64_t N, std::int64_t k, const EvalOptions& opts = {});

// 2 N^3 times the h-sum for the cyclic quotient C_N^{1,m}; h runs over
// 0<h<N with h + <hm> + <hm^2> = N.
SumValue quotient_trace(std::int64_t N, std::int64_t m, const EvalOptions& opts = {});

enum class CurveType { fermat_curve, cyclic_quotient };

struct CurveDesc {
    CurveType type;
    std::int64_t n;
    std::int64_t m = 0; // quotient only

    static CurveDesc fermat(std::int64_t n) { return {CurveType::fermat_curve, n, 0}; }
    static CurveDesc quotient(std::int64_t n, std::int64_t m) {
        return {CurveType::cyclic_quotient, n, m};
    }
};

struct Certificate {
    CurveDesc curve;
    std::int64_t k;
    SeriesValue value;
    double frac_distance;
    Verdict verdict;
    std::vector<HTerm> h_terms;
    std::vector<std::string> notes;
    bool eval_closed_form = true;
    bool eval_quadrature = false;
};

// One-sided numerical certification: nontrivial_numerical iff the
// fractional distance clears margin_factor times the error bound;
// otherwise inconclusive.  Never reports "trivial".
Certificate make_verdict(const CurveDesc& curve, std::int64_t k,
                         const EvalOptions& opts = {});

} // namespace ceresa::volume

#endif
