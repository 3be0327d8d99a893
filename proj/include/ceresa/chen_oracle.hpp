#ifndef CERESA_CHEN_ORACLE_HPP
#define CERESA_CHEN_ORACLE_HPP

#include "ceresa/rational.hpp"
#include "ceresa/series_value.hpp"

namespace ceresa::chen {

// The 1-form s^{alpha-1} (1-s)^{beta-1} ds on [0,1].  Exponents lie in
// (0,1]; alpha = beta = 1 is the plain ds used in the trivial checks.
struct BetaForm {
    Rational alpha, beta;

    BetaForm(Rational a, Rational b) : alpha(a), beta(b) {
        if (!alpha.positive() || !beta.positive() || alpha > Rational(1) ||
            beta > Rational(1))
            throw std::invalid_argument("BetaForm: exponents must lie in (0,1]");
    }
};

// Quadrature oracle values.  These deliberately avoid the Gamma-function
// closed forms so they can cross-check them.

// integral of w over [0,1] (tanh-sinh; equals B(alpha,beta))
SeriesValue integral_len1(const BetaForm& w, double target_abs_error = 1e-12);

// integral of w over the subsegment [lo,hi] of [0,1]
SeriesValue integral_len1_segment(const BetaForm& w, double lo, double hi,
                                  double target_abs_error = 1e-12);

// iterated integral over 0 <= s1 <= s2 <= 1; the inner integral is the
// incomplete beta (Lentz continued fraction), the outer is tanh-sinh
SeriesValue integral_len2(const BetaForm& w1, const BetaForm& w2,
                          double target_abs_error = 1e-10);

// iterated integral over lo <= s1 <= s2 <= hi
SeriesValue integral_len2_segment(const BetaForm& w1, const BetaForm& w2,
                                  double lo, double hi,
                                  double target_abs_error = 1e-10);

struct PathProductCheck {
    bool pass;
    double residual;     // |lhs - rhs|
    double error_budget; // sum of the propagated error bounds
};

// Verifies int_{a.b} w1 w2 = int_a w1 w2 + int_a w1 int_b w2 + int_b w1 w2
// with a = [0,split], b = [split,1].
PathProductCheck check_path_product(const BetaForm& w1, const BetaForm& w2,
                                    double split,
                                    double target_abs_error = 1e-10);

} // namespace ceresa::chen

#endif
