#include <doctest.h>

#include <cmath>
#include <random>

#include "ceresa/chen_oracle.hpp"
#include "ceresa/specfun.hpp"
#include "ceresa/volume.hpp"

using namespace ceresa;
using chen::BetaForm;

namespace {
const double pi = 3.14159265358979323846;

Rational rand_angle(std::mt19937& rng, int max_den = 10) {
    std::uniform_int_distribution<int> dd(2, max_den);
    const int q = dd(rng);
    std::uniform_int_distribution<int> dn(1, q - 1);
    return Rational(dn(rng), q);
}
} // namespace

TEST_CASE("length-1 integrals") {
    CHECK(chen::integral_len1({Rational(1), Rational(1)}).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    const auto v = chen::integral_len1({Rational(1, 3), Rational(2, 3)});
    CHECK(std::fabs(v.value - specfun::beta(Rational(1, 3), Rational(2, 3)).value) <
          1e-10);
    const auto w = chen::integral_len1({Rational(1, 2), Rational(1, 2)});
    CHECK(std::fabs(w.value - pi) < 1e-10);
}

TEST_CASE("length-1 quadrature vs Gamma formula on a random grid") {
    std::mt19937 rng(41);
    for (int i = 0; i < 100; ++i) {
        const BetaForm w{rand_angle(rng, 20), rand_angle(rng, 20)};
        const auto q = chen::integral_len1(w);
        const auto g = specfun::beta(w.alpha, w.beta);
        CHECK(std::fabs(q.value - g.value) <= 1e-10 * (1.0 + g.value));
    }
}

TEST_CASE("length-2 simplex volume") {
    const BetaForm ds{Rational(1), Rational(1)};
    const auto v = chen::integral_len2(ds, ds);
    CHECK(std::fabs(v.value - 0.5) < 1e-11);
}

TEST_CASE("shuffle relation, length (1,1)") {
    std::mt19937 rng(43);
    for (int i = 0; i < 25; ++i) {
        const BetaForm w1{rand_angle(rng), rand_angle(rng)};
        const BetaForm w2{rand_angle(rng), rand_angle(rng)};
        const auto ab = chen::integral_len2(w1, w2);
        const auto ba = chen::integral_len2(w2, w1);
        const auto prod = chen::integral_len1(w1) * chen::integral_len1(w2);
        const double residual = std::fabs(ab.value + ba.value - prod.value);
        CHECK(residual <= 2.0 * (ab.abs_error + ba.abs_error + prod.abs_error) + 1e-12);
        // positivity and the shuffle upper bound
        CHECK(ab.value > 0.0);
        CHECK(ab.value < prod.value);
    }
}

TEST_CASE("dual-path against the closed form, N=7 (1,5),(5,4)") {
    const fermat::FermatIndex x1(7, 1, 5), x2(7, 5, 4);
    const auto closed = volume::closed_iterated_integral(x1, x2, 1e-13);
    const auto raw = chen::integral_len2({Rational(1, 7), Rational(5, 7)},
                                         {Rational(5, 7), Rational(4, 7)}, 1e-11);
    const auto b1 = specfun::beta(Rational(1, 7), Rational(5, 7));
    const auto b2 = specfun::beta(Rational(5, 7), Rational(4, 7));
    CHECK(std::fabs(closed.value - raw.value / (b1.value * b2.value)) <= 1e-9);
}

TEST_CASE("path product identity") {
    const BetaForm ds{Rational(1), Rational(1)};
    const auto trivial = chen::check_path_product(ds, ds, 0.5);
    CHECK(trivial.pass);
    CHECK(trivial.residual <= 1e-12);

    std::mt19937 rng(47);
    for (int i = 0; i < 10; ++i) {
        const BetaForm w1{rand_angle(rng), rand_angle(rng)};
        const BetaForm w2{rand_angle(rng), rand_angle(rng)};
        const auto c = chen::check_path_product(w1, w2, 0.3);
        CHECK(c.pass);
    }
    // split close to the boundary still passes within the (larger) budget
    const BetaForm w1{Rational(1, 3), Rational(3, 4)};
    const BetaForm w2{Rational(2, 5), Rational(1, 2)};
    const auto edge = chen::check_path_product(w1, w2, 0.999);
    CHECK(edge.pass);
    CHECK_THROWS_AS(chen::check_path_product(w1, w2, 0.0), std::invalid_argument);
}

TEST_CASE("BetaForm validation") {
    CHECK_THROWS_AS(BetaForm(Rational(0), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(BetaForm(Rational(3, 2), Rational(1)), std::invalid_argument);
}
