#ifndef CERESA_SERIES_VALUE_HPP
#define CERESA_SERIES_VALUE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace ceresa {

enum class EvalMethod { direct_sum, richardson, closed_form, quadrature };

inline const char* to_string(EvalMethod m) {
    switch (m) {
        case EvalMethod::direct_sum: return "direct_sum";
        case EvalMethod::richardson: return "richardson";
        case EvalMethod::closed_form:       return "closed_form";
        case EvalMethod::quadrature:        return "quadrature";
    }
    return "?";
}

// A numeric result with a tracked non-negative absolute error bound.
struct SeriesValue {
    double value = 0.0;
    double abs_error = 0.0;
    long terms_used = 0;
    EvalMethod method = EvalMethod::closed_form;

    SeriesValue() = default;
    SeriesValue(double v, double e, long n, EvalMethod m)
        : value(v), abs_error(e), terms_used(n), method(m) {
        if (!std::isfinite(v)) throw std::domain_error("SeriesValue: non-finite value");
        if (!(e >= 0.0)) throw std::domain_error("SeriesValue: negative error bound");
    }

    friend SeriesValue operator+(const SeriesValue& a, const SeriesValue& b) {
        return {a.value + b.value, a.abs_error + b.abs_error,
                a.terms_used + b.terms_used, a.method};
    }
    friend SeriesValue operator-(const SeriesValue& a, const SeriesValue& b) {
        return {a.value - b.value, a.abs_error + b.abs_error,
                a.terms_used + b.terms_used, a.method};
    }
    friend SeriesValue operator*(const SeriesValue& a, const SeriesValue& b) {
        const double err = std::fabs(a.value) * b.abs_error +
                           std::fabs(b.value) * a.abs_error +
                           a.abs_error * b.abs_error;
        return {a.value * b.value, err, a.terms_used + b.terms_used, a.method};
    }
    SeriesValue scaled(double c) const {
        return {c * value, std::fabs(c) * abs_error, terms_used, method};
    }
};

} // namespace ceresa

#endif
