#ifndef CERESA_RATIONAL_HPP
#define CERESA_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ceresa {

// Exact rational with 64-bit components, always in lowest terms with
// positive denominator.  All special-function parameters are carried as
// rationals until the innermost floating-point kernel.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
    explicit Rational(std::int64_t n) : num_(n), den_(1) {}

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    bool is_integer() const { return den_ == 1; }
    bool is_nonpositive_integer() const { return den_ == 1 && num_ <= 0; }
    bool positive() const { return num_ > 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_, den_;
};

// A rational parameter of a Gamma/Beta/3F2 call.  The strict regime
// (value in (0,1)) covers the angles <a>/N themselves; derived sums such
// as alpha1+alpha2 may exceed 1 and are constructed with strict=false.
class RationalAngle {
public:
    RationalAngle(std::int64_t num, std::int64_t den, bool strict = true)
        : r_(num, den), strict_(strict) {
        if (r_.num() <= 0) throw std::invalid_argument("RationalAngle: must be positive");
        if (strict_ && r_ >= Rational(1))
            throw std::invalid_argument("RationalAngle: strict angle must lie in (0,1)");
    }
    explicit RationalAngle(const Rational& r, bool strict = true) : r_(r), strict_(strict) {
        if (r_.num() <= 0) throw std::invalid_argument("RationalAngle: must be positive");
        if (strict_ && r_ >= Rational(1))
            throw std::invalid_argument("RationalAngle: strict angle must lie in (0,1)");
    }

    const Rational& value() const { return r_; }
    bool strict() const { return strict_; }
    double to_double() const { return r_.to_double(); }

private:
    Rational r_;
    bool strict_;
};

} // namespace ceresa

#endif
