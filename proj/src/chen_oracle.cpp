#include "ceresa/chen_oracle.hpp"

#include <cmath>

#include "ceresa/quadrature.hpp"
#include "ceresa/specfun.hpp"

namespace ceresa::chen {

namespace {

using quadrature::DENode;
using quadrature::TanhSinh;

// log of w evaluated at a point of [lo,hi] parameterized as
// s = lo + (hi-lo) u, with u given as a tanh-sinh node.  The node's log
// forms are used whenever an actual endpoint singularity is in play.
double log_form_at(const BetaForm& w, double lo, double hi, const DENode& u) {
    const double width = hi - lo;
    const double am1 = w.alpha.to_double() - 1.0;
    const double bm1 = w.beta.to_double() - 1.0;
    double log_s, log_oms;
    if (lo == 0.0)
        log_s = std::log(width) + u.log_s;
    else
        log_s = std::log(lo + width * u.s);
    if (hi == 1.0)
        log_oms = std::log(width) + u.log_one_minus_s;
    else
        log_oms = std::log1p(-(lo + width * u.s));
    return am1 * log_s + bm1 * log_oms;
}

double s_at(double lo, double hi, const DENode& u) { return lo + (hi - lo) * u.s; }

} // namespace

SeriesValue integral_len1_segment(const BetaForm& w, double lo, double hi,
                                  double target_abs_error) {
    if (!(0.0 <= lo && lo < hi && hi <= 1.0))
        throw std::invalid_argument("integral_len1_segment: bad segment");
    const double width = hi - lo;
    TanhSinh q;
    auto r = q.integrate_log(
        [&](const DENode& u) { return std::log(width) + log_form_at(w, lo, hi, u); },
        target_abs_error);
    r.method = EvalMethod::quadrature;
    return r;
}

SeriesValue integral_len1(const BetaForm& w, double target_abs_error) {
    return integral_len1_segment(w, 0.0, 1.0, target_abs_error);
}

SeriesValue integral_len2_segment(const BetaForm& w1, const BetaForm& w2,
                                  double lo, double hi,
                                  double target_abs_error) {
    if (!(0.0 <= lo && lo < hi && hi <= 1.0))
        throw std::invalid_argument("integral_len2_segment: bad segment");
    const double width = hi - lo;
    const double a1 = w1.alpha.to_double();
    const double b1 = w1.beta.to_double();
    const auto b1v = specfun::beta(w1.alpha, w1.beta);
    const double log_b1 = std::log(b1v.value);
    const double i_lo =
        (lo == 0.0) ? 0.0 : specfun::inc_beta_reg_fast(lo, a1, b1, log_b1);

    // inner antiderivative W1(s) - W1(lo) = B1 (I_s - I_lo), in log form
    auto log_inner = [&](const DENode& u) {
        if (lo == 0.0 && std::log(width) + u.log_s < -500.0) {
            // deep tail: I_s(a,b) ~ s^a / (a B1)
            return a1 * (std::log(width) + u.log_s) - std::log(a1);
        }
        if (hi == 1.0) {
            // near s = 1 the double abscissa loses the (1-s)^{b1} tail of
            // I_s; use the complement through the node's log(1-s) instead
            const double l1ms = std::log(width) + u.log_one_minus_s;
            if (l1ms < -3.0) {
                const double tail =
                    std::exp(specfun::inc_beta_tail_log(l1ms, a1, b1, log_b1));
                const double diff = (1.0 - i_lo) - tail;
                if (diff <= 0.0) return -std::numeric_limits<double>::infinity();
                return log_b1 + std::log(diff);
            }
        }
        const double s = s_at(lo, hi, u);
        const double diff = specfun::inc_beta_reg_fast(s, a1, b1, log_b1) - i_lo;
        if (diff <= 0.0) return -std::numeric_limits<double>::infinity();
        return log_b1 + std::log(diff);
    };

    TanhSinh q;
    auto r = q.integrate_log(
        [&](const DENode& u) {
            return std::log(width) + log_form_at(w2, lo, hi, u) + log_inner(u);
        },
        target_abs_error);
    // the inner incomplete beta carries its own error bound
    const double inner_err =
        (2e-14 + b1v.abs_error / b1v.value) * std::fabs(r.value) + 1e-15;
    return {r.value, r.abs_error + inner_err, r.terms_used, EvalMethod::quadrature};
}

SeriesValue integral_len2(const BetaForm& w1, const BetaForm& w2,
                          double target_abs_error) {
    return integral_len2_segment(w1, w2, 0.0, 1.0, target_abs_error);
}

PathProductCheck check_path_product(const BetaForm& w1, const BetaForm& w2,
                                    double split, double target_abs_error) {
    if (!(split > 0.0 && split < 1.0))
        throw std::invalid_argument("check_path_product: split outside (0,1)");
    const auto lhs = integral_len2(w1, w2, target_abs_error);
    const auto head = integral_len2_segment(w1, w2, 0.0, split, target_abs_error);
    const auto tail = integral_len2_segment(w1, w2, split, 1.0, target_abs_error);
    const auto f1 = integral_len1_segment(w1, 0.0, split, target_abs_error);
    const auto f2 = integral_len1_segment(w2, split, 1.0, target_abs_error);
    const auto rhs = head + f1 * f2 + tail;
    const double residual = std::fabs(lhs.value - rhs.value);
    const double budget = 2.0 * (lhs.abs_error + rhs.abs_error) + 1e-13;
    return {residual <= budget, residual, budget};
}

} // namespace ceresa::chen
