#include "ceresa/fermat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ceresa/specfun.hpp"

namespace ceresa::fermat {

std::int64_t mod_rep(std::int64_t x, std::int64_t N) {
    std::int64_t r = x % N;
    if (r < 0) r += N;
    return r;
}

FermatIndex::FermatIndex(std::int64_t N, std::int64_t a, std::int64_t b) : n_(N) {
    if (N < 4) throw std::invalid_argument("FermatIndex: N must be >= 4");
    a_ = mod_rep(a, N);
    b_ = mod_rep(b, N);
    if (a_ == 0 || b_ == 0 || (a_ + b_) % N == 0)
        throw std::invalid_argument("FermatIndex: a, b, a+b must be nonzero mod N");
}

IndexTriple::IndexTriple(FermatIndex a, FermatIndex b, FermatIndex c)
    : t1(a), t2(b), t3(c) {
    if (t1.N() != t2.N() || t1.N() != t3.N())
        throw std::invalid_argument("IndexTriple: mixed N");
}

CyclotomicPoint::CyclotomicPoint(std::int64_t N_, std::int64_t h_) : N(N_), h(mod_rep(h_, N_)) {
    if (std::gcd(h, N) != 1)
        throw std::invalid_argument("CyclotomicPoint: h must be a unit mod N");
}

std::vector<FermatIndex> index_set(std::int64_t N) {
    if (N < 4) throw std::invalid_argument("index_set: N must be >= 4");
    std::vector<FermatIndex> holo, anti;
    for (std::int64_t a = 1; a < N; ++a)
        for (std::int64_t b = 1; b < N; ++b) {
            if ((a + b) % N == 0) continue;
            FermatIndex idx(N, a, b);
            (idx.is_holo() ? holo : anti).push_back(idx);
        }
    holo.insert(holo.end(), anti.begin(), anti.end());
    return holo;
}

std::vector<std::int64_t> units(std::int64_t N) {
    std::vector<std::int64_t> u;
    for (std::int64_t h = 1; h < N; ++h)
        if (std::gcd(h, N) == 1) u.push_back(h);
    return u;
}

bool assumption_check(const IndexTriple& t) {
    const std::int64_t N = t.N();
    if ((t.t1.rep_a() + t.t2.rep_a() + t.t3.rep_a()) % N != 0) return false;
    if ((t.t1.rep_b() + t.t2.rep_b() + t.t3.rep_b()) % N != 0) return false;
    for (std::int64_t h : units(N))
        if (t.t1.scaled(h).is_holo() != t.t2.scaled(h).is_holo()) return false;
    return true;
}

bool assumption_check_strong(const IndexTriple& t) {
    if (!assumption_check(t)) return false;
    for (std::int64_t h : units(t.N()))
        if (t.t1.scaled(h).is_holo() != t.t3.scaled(h).is_holo()) return false;
    return true;
}

namespace {

std::complex<double> zeta_pow(std::int64_t N, std::int64_t e) {
    const double ang = 2.0 * M_PI * static_cast<double>(mod_rep(e, N)) /
                       static_cast<double>(N);
    return {std::cos(ang), std::sin(ang)};
}

} // namespace

PeriodValue period(std::int64_t i, std::int64_t j, const FermatIndex& idx) {
    const std::int64_t N = idx.N();
    const std::int64_t a = idx.rep_a(), b = idx.rep_b();
    const std::int64_t e = mod_rep(a * i + b * j, N);

    const auto bval = specfun::beta(idx.alpha().value(), idx.beta().value());
    const std::complex<double> one{1.0, 0.0};
    const std::complex<double> unit_part =
        (one - zeta_pow(N, a)) * (one - zeta_pow(N, b)) * zeta_pow(N, e);
    const std::complex<double> value =
        unit_part * (bval.value / static_cast<double>(N));
    const double err = std::abs(unit_part) *
                           (bval.abs_error / static_cast<double>(N)) +
                       std::abs(value) * 1e-14;

    // exact expansion of (1-x^a)(1-x^b) x^e in Z[x]/(x^N - 1), reduced to
    // the power basis for prime N via zeta^{N-1} = -(1 + ... + zeta^{N-2})
    std::vector<std::int64_t> coeffs;
    if (is_prime(N)) {
        std::vector<std::int64_t> c(N, 0);
        c[e] += 1;
        c[mod_rep(e + a, N)] -= 1;
        c[mod_rep(e + b, N)] -= 1;
        c[mod_rep(e + a + b, N)] += 1;
        coeffs.assign(c.begin(), c.end() - 1);
        const std::int64_t top = c[N - 1];
        for (auto& x : coeffs) x -= top;
    }
    return {value, err, std::move(coeffs)};
}

PairingValue intersection_pairing(const FermatIndex& x, const FermatIndex& y,
                                  const CyclotomicPoint& at) {
    const std::int64_t N = x.N();
    if (N != y.N()) throw std::invalid_argument("intersection_pairing: mixed N");
    if (N != at.N) throw std::invalid_argument("intersection_pairing: mixed N");
    if (mod_rep(x.rep_a() + y.rep_a(), N) != 0 ||
        mod_rep(x.rep_b() + y.rep_b(), N) != 0)
        return {{0.0, 0.0}, 0.0, true};
    const std::complex<double> one{1.0, 0.0};
    const std::int64_t h = at.h;
    const std::complex<double> num =
        (one - zeta_pow(N, h * x.rep_a())) * (one - zeta_pow(N, h * x.rep_b()));
    const std::complex<double> den = one - zeta_pow(N, h * (x.rep_a() + x.rep_b()));
    const std::complex<double> v =
        static_cast<double>(N) * static_cast<double>(N) * num / den;
    return {v, std::abs(v) * 1e-14, false};
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> find_m(std::int64_t N) {
    if (!is_prime(N) || N < 5)
        throw std::invalid_argument("find_m: N must be a prime >= 5");
    std::vector<std::int64_t> out;
    for (std::int64_t m = 2; m < N - 1; ++m)
        if ((m * m + m + 1) % N == 0) out.push_back(m);
    return out;
}

} // namespace ceresa::fermat
