#ifndef CERESA_QUADRATURE_HPP
#define CERESA_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ceresa/compensated.hpp"
#include "ceresa/series_value.hpp"

namespace ceresa::quadrature {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Node of the tanh-sinh rule on (0,1): abscissa s, its complement 1-s,
// and both in log form.  Endpoint exponents as small as 1/1000 put the
// relevant mass at s ~ exp(-10^4), far below double underflow, so the
// integrand is evaluated in log space throughout.
struct DENode {
    double s, one_minus_s;
    double log_s, log_one_minus_s;
    double log_weight; // log of (ds/dt)/2 at this node
};

// Positive integrand given in log form.
using LogIntegrand = std::function<double(const DENode&)>;

// Tanh-sinh (double exponential) quadrature on (0,1).  Levels are doubled
// until two successive levels agree within the target; the disagreement is
// the reported error bound.
class TanhSinh {
public:
    explicit TanhSinh(double t_max = 9.5, int max_level = 12)
        : t_max_(t_max), max_level_(max_level) {}

    SeriesValue integrate_log(const LogIntegrand& log_f,
                              double target_abs_error) const {
        double h = 0.5;
        long evals = 0;

        auto eval_at = [&](double t_signed) {
            const double t = std::fabs(t_signed);
            const double u = 1.5707963267948966 * std::sinh(t);
            const double e2u = std::exp(-2.0 * u);
            const double l1p = std::log1p(e2u);
            DENode node;
            const double sp = 1.0 / (1.0 + e2u);
            const double sm = e2u * sp;
            if (t_signed >= 0) {
                node.s = sp; node.one_minus_s = sm;
                node.log_s = -l1p;
                node.log_one_minus_s = -2.0 * u - l1p;
            } else {
                node.s = sm; node.one_minus_s = sp;
                node.log_s = -2.0 * u - l1p;
                node.log_one_minus_s = -l1p;
            }
            // weight pi/2 cosh(t) sech^2(u) / 2, in log form
            node.log_weight = std::log(1.5707963267948966 * std::cosh(t)) +
                              std::log(2.0) - 2.0 * u - 2.0 * l1p;
            ++evals;
            const double lf = log_f(node);
            const double e = node.log_weight + lf;
            return (e < -740.0) ? 0.0 : std::exp(e);
        };

        auto node_pass = [&](double step, bool odd_only) {
            KahanSum<double> acc;
            const double start = odd_only ? step : 0.0;
            const double stride = odd_only ? 2.0 * step : step;
            for (double t = start; t <= t_max_; t += stride) {
                double contrib = eval_at(t);
                if (t > 0.0) contrib += eval_at(-t);
                acc.add(contrib);
            }
            return acc.value();
        };

        double sum = node_pass(h, false);
        double prev = h * sum;
        for (int level = 1; level <= max_level_; ++level) {
            h *= 0.5;
            sum += node_pass(h, true);
            const double cur = h * sum;
            const double diff = std::fabs(cur - prev);
            const double round = (std::fabs(cur) + 1.0) * 8e-16;
            if (level >= 3 && diff <= std::max(target_abs_error, round))
                return {cur, std::max(diff, round), evals, EvalMethod::quadrature};
            prev = cur;
        }
        throw QuadratureError("tanh-sinh: failed to reach target accuracy");
    }

private:
    double t_max_;
    int max_level_;
};

} // namespace ceresa::quadrature

#endif
