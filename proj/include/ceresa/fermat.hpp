#ifndef CERESA_FERMAT_HPP
#define CERESA_FERMAT_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "ceresa/rational.hpp"
#include "ceresa/series_value.hpp"

namespace ceresa::fermat {

// Index (a,b) in (Z/NZ)^2 with a, b, a+b all nonzero; labels the 1-form
// omega^{a,b}.  Residues are reduced to representatives <a> in {1,..,N-1}
// at construction; negative inputs such as (1,-2) are accepted.
class FermatIndex {
public:
    FermatIndex(std::int64_t N, std::int64_t a, std::int64_t b);

    std::int64_t N() const { return n_; }
    std::int64_t rep_a() const { return a_; }
    std::int64_t rep_b() const { return b_; }

    bool is_holo() const { return a_ + b_ < n_; }
    RationalAngle alpha() const { return RationalAngle(a_, n_); }
    RationalAngle beta() const { return RationalAngle(b_, n_); }

    FermatIndex negated() const { return FermatIndex(n_, -a_, -b_); }
    FermatIndex scaled(std::int64_t h) const { return FermatIndex(n_, h * a_, h * b_); }

    friend bool operator==(const FermatIndex& x, const FermatIndex& y) {
        return x.n_ == y.n_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    std::int64_t n_, a_, b_;
};

struct IndexTriple {
    FermatIndex t1, t2, t3;
    IndexTriple(FermatIndex a, FermatIndex b, FermatIndex c);
    std::int64_t N() const { return t1.N(); }
};

// Designates the embedding xi -> zeta^h, zeta = exp(2 pi i / N).
struct CyclotomicPoint {
    std::int64_t N, h;
    CyclotomicPoint(std::int64_t N_, std::int64_t h_);
};

std::int64_t mod_rep(std::int64_t x, std::int64_t N); // representative in 1..N-1

// all (N-1)(N-2) indices; holo entries first, each holo count (N-1)(N-2)/2
std::vector<FermatIndex> index_set(std::int64_t N);
std::vector<std::int64_t> units(std::int64_t N); // (Z/NZ)^*, ascending

// Assumption: sum of the triple is (0,0) and for every unit h the pairs
// (h a_i, h b_i), i=1,2 are holomorphic or not together.
bool assumption_check(const IndexTriple& t);
// stronger variant: the i=1,2,3 conditions agree for every unit h
bool assumption_check_strong(const IndexTriple& t);

// Period of omega_0^{a,b} along alpha^i beta^j kappa_0 via the closed
// formula B^N_{a,b} (1-zeta^a)(1-zeta^b) zeta^{ai+bj} / N.  For prime N the
// exact coefficient vector of the normalized period in the power basis
// {1, zeta, ..., zeta^{N-2}} is attached (empty for composite N).
struct PeriodValue {
    std::complex<double> value;
    double abs_error;
    std::vector<std::int64_t> cyclotomic_coeffs;
};

PeriodValue period(std::int64_t i, std::int64_t j, const FermatIndex& idx);

// Intersection pairing (phi^{a,b}, phi^{c,d}) at the embedding xi -> zeta^h:
// N^2 (1-xi^a)(1-xi^b)/(1-xi^{a+b}) when (c,d) = (-a,-b), else exactly 0.
struct PairingValue {
    std::complex<double> value;
    double abs_error;
    bool exactly_zero;
};

PairingValue intersection_pairing(const FermatIndex& x, const FermatIndex& y,
                                  const CyclotomicPoint& at);

bool is_prime(std::int64_t n);

// all m in (1, N-1) with m^2 + m + 1 = 0 mod N; N must be prime >= 5.
// Empty exactly when N != 1 mod 3.
std::vector<std::int64_t> find_m(std::int64_t N);

} // namespace ceresa::fermat

#endif
