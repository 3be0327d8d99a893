#ifndef CERESA_SPECFUN_HPP
#define CERESA_SPECFUN_HPP

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ceresa/compensated.hpp"
#include "ceresa/rational.hpp"
#include "ceresa/series_value.hpp"

namespace ceresa::specfun {

struct NonConvergentError : std::domain_error {
    using std::domain_error::domain_error;
};
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 3F2 parameter block.  The excess b1+b2-a1-a2-a3 is kept exact; its sign
// decides unit-argument convergence before any float is touched.
struct Hyp3F2Params {
    Rational a1, a2, a3, b1, b2;

    Hyp3F2Params(Rational a1_, Rational a2_, Rational a3_, Rational b1_, Rational b2_)
        : a1(a1_), a2(a2_), a3(a3_), b1(b1_), b2(b2_) {
        if (b1.is_nonpositive_integer() || b2.is_nonpositive_integer())
            throw std::domain_error("3F2: lower parameter is a nonpositive integer");
    }

    Rational excess() const { return b1 + b2 - a1 - a2 - a3; }

    // n such that the series terminates after term n (an upper parameter is a
    // nonpositive integer), or -1 if it does not terminate.
    long truncation_order() const {
        long best = -1;
        for (const Rational* a : {&a1, &a2, &a3}) {
            if (a->is_nonpositive_integer()) {
                const long n = static_cast<long>(-a->num());
                if (best < 0 || n < best) best = n;
            }
        }
        return best;
    }
};

template <typename Real>
struct Eval {
    Real value = 0;
    Real abs_error = 0;
    long terms_used = 0;
    EvalMethod method = EvalMethod::closed_form;
};

namespace detail {

// Stirling/Bernoulli log-gamma computed in binary128; the result carries
// quad-precision accuracy, so the only error left after narrowing is the
// target format's own rounding.
long double lgamma_quad(long double x);

} // namespace detail

template <typename Real>
Eval<Real> eval_lgamma(Real x) {
    if (!(x > 0)) throw std::domain_error("ln_gamma: argument must be positive");
    const Real v =
        static_cast<Real>(detail::lgamma_quad(static_cast<long double>(x)));
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real err = std::fabs(v) * eps + Real(1e-30);
    return {v, err, 0, EvalMethod::closed_form};
}

template <typename Real>
Eval<Real> eval_gamma_product(const std::vector<Rational>& numerators,
                              const std::vector<Rational>& denominators) {
    KahanSum<Real> log_sum;
    Real log_err = 0;
    for (const auto& r : numerators) {
        if (!r.positive()) throw std::domain_error("gamma_product: non-positive argument");
        const auto g = eval_lgamma<Real>(static_cast<Real>(r.to_long_double()));
        log_sum.add(g.value);
        log_err += g.abs_error;
    }
    for (const auto& r : denominators) {
        if (!r.positive()) throw std::domain_error("gamma_product: non-positive argument");
        const auto g = eval_lgamma<Real>(static_cast<Real>(r.to_long_double()));
        log_sum.add(-g.value);
        log_err += g.abs_error;
    }
    const Real v = std::exp(log_sum.value());
    const Real eps = std::numeric_limits<Real>::epsilon();
    return {v, std::fabs(v) * (log_err + 2 * eps), 0, EvalMethod::closed_form};
}

// 3F2 at unit argument.  Direct term recurrence with compensated
// accumulation.  For nonterminating series the partial-sum tail has the
// asymptotic form M^{-s} (A + B/M + ...) with s the (exactly known) excess,
// so Richardson extrapolation over geometric checkpoints M, 2M, 4M, ...
// eliminates one tail power per stage.  The excess must be positive
// (exact rational test) unless the series terminates.
template <typename Real>
Eval<Real> eval_hyp3f2(const Hyp3F2Params& p, Real target_abs_error,
                       long max_terms = 2000000) {
    const long trunc = p.truncation_order();
    const Rational s = p.excess();
    if (trunc < 0 && !(s > Rational(0)))
        throw NonConvergentError("3F2: excess <= 0 at unit argument");

    const Real a1 = static_cast<Real>(p.a1.to_long_double());
    const Real a2 = static_cast<Real>(p.a2.to_long_double());
    const Real a3 = static_cast<Real>(p.a3.to_long_double());
    const Real b1 = static_cast<Real>(p.b1.to_long_double());
    const Real b2 = static_cast<Real>(p.b2.to_long_double());
    const Real eps = std::numeric_limits<Real>::epsilon();

    KahanSum<Real> sum;
    Real term = 1;

    // Terminating series: exact finite sum.
    if (trunc >= 0) {
        long n = 0;
        for (; n <= trunc; ++n) {
            sum.add(term);
            term *= (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (1 + n));
        }
        const Real v = sum.value();
        return {v, (std::fabs(v) + 1) * (trunc + 2) * eps, n, EvalMethod::direct_sum};
    }

    const Real excess = static_cast<Real>(s.to_long_double());

    // rows[j][i]: partial sum at checkpoint m0*2^j after i elimination stages
    std::vector<std::vector<Real>> rows;
    const long m0 = 64;
    long checkpoint = m0;
    for (long n = 0; n < max_terms; ++n) {
        sum.add(term);
        term *= (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (1 + n));
        if (n + 1 != checkpoint) continue;
        checkpoint *= 2;

        const std::size_t j = rows.size();
        std::vector<Real> row{sum.value()};
        Real amplification = 1;
        for (std::size_t i = 0; i < j; ++i) {
            const Real p = std::pow(Real(2), excess + Real(i));
            row.push_back((p * row[i] - rows[j - 1][i]) / (p - 1));
            amplification *= 1 + 1 / (p - 1);
        }
        rows.push_back(row);
        if (j < 2) continue;

        const Real delta = std::fabs(row[j] - rows[j - 1][j - 1]);
        const Real round_err =
            amplification * (std::fabs(row[j]) + 1) * 8 * eps;
        // stop when the target is met, or when the extrapolation has hit the
        // rounding floor and further terms cannot improve it; either way the
        // reported error stays honest
        if (10 * delta <= std::max(target_abs_error, round_err))
            return {row[j], 10 * delta + round_err, n + 1,
                    EvalMethod::richardson};
    }
    throw BudgetExceededError("3F2: target accuracy unreachable within term budget");
}

// ---- public double-facing API ----------------------------------------

SeriesValue ln_gamma(double x);
SeriesValue gamma_product(const std::vector<Rational>& numerators,
                          const std::vector<Rational>& denominators);
SeriesValue beta(const Rational& u, const Rational& v);
SeriesValue inc_beta_reg(double x, const Rational& u, const Rational& v);
// continued-fraction kernel with the caller supplying log B(a,b); used in
// quadrature inner loops where B is loop-invariant
double inc_beta_reg_fast(double x, double a, double b, double log_beta);
// log of the upper tail 1 - I_x(a,b) with 1-x supplied in log form; stays
// accurate where x is so close to 1 that the tail underflows through x
double inc_beta_tail_log(double log_one_minus_x, double a, double b,
                         double log_beta);
SeriesValue hyp3f2_unit(const Hyp3F2Params& p, double target_abs_error);

} // namespace ceresa::specfun

#endif
