#ifndef CERESA_COMPENSATED_HPP
#define CERESA_COMPENSATED_HPP

#include <cmath>

namespace ceresa {

// Kahan-Neumaier compensated accumulator.
template <typename Real>
class KahanSum {
public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }
    void reset() { sum_ = 0; comp_ = 0; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

} // namespace ceresa

#endif
