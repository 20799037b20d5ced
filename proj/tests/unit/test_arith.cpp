#include <doctest.h>

#include "dseries/error.hpp"
#include "dseries/random.hpp"
#include "dseries/series.hpp"
#include "helpers.hpp"

using namespace dseries;
using helpers::exact;
using helpers::q;

TEST_CASE("add and scale")
{
    CHECK((exact(8, {{1, 1}}) + exact(8, {{1, -1}})).is_zero());
    CHECK((exact(8, {{2, 1}}) + exact(8, {{3, 1}})).identical(exact(8, {{2, 1}, {3, 1}})));
    CHECK(scale(q(2), exact(8, {{2, 1}, {4, 3}})).identical(exact(8, {{2, 2}, {4, 6}})));
    CHECK((exact(8, {{2, 1}}) + exact(4, {{3, 1}})).window() == 4);
    CHECK_THROWS_AS(Series::one(4) + Series::one(4, ScalarMode::floating), Error);
}

TEST_CASE("multiplication examples")
{
    CHECK((exact(16, {{1, 1}, {2, 1}}) * exact(16, {{1, 1}, {3, 1}}))
              .identical(exact(16, {{1, 1}, {2, 1}, {3, 1}, {6, 1}})));
    CHECK((exact(8, {{2, 1}}) * exact(8, {{2, 1}})).identical(exact(8, {{4, 1}})));
    // The product 2*5 lies past the window and is dropped.
    CHECK((exact(8, {{2, 1}}) * exact(8, {{5, 1}})).is_zero());
}

TEST_CASE("unit series")
{
    CHECK(Series::one(1).identical(exact(1, {{1, 1}})));
    CHECK((Series::one(8) + scale(q(-1), Series::one(8))).is_zero());
    CHECK_THROWS_AS(Series::one(0), Error);
}

TEST_CASE("series construction validates")
{
    Series f(8, ScalarMode::exact);
    CHECK_THROWS_AS(f.set(9, q(1)), Error);
    CHECK_THROWS_AS(f.set(0, q(1)), Error);
    CHECK_THROWS_AS(f.set(2, Scalar(FloatComplex(1.0, 0.0))), Error);
    f.set(3, q(0));
    CHECK(f.is_zero());
    CHECK_THROWS_AS(f.coeff(9), Error);
}

TEST_CASE("equality uses the common window")
{
    CHECK(exact(4, {{2, 1}}) == exact(8, {{2, 1}, {7, 1}}));
    CHECK_FALSE(exact(4, {{2, 1}}).identical(exact(8, {{2, 1}})));
    CHECK_FALSE(exact(8, {{2, 1}}) == exact(8, {{2, 2}}));
}

TEST_CASE("invert examples")
{
    CHECK(invert(exact(8, {{1, 2}})).identical(exact(8, {{1, Rational(1, 2)}})));
    const Series mu = invert(Series::zeta(8));
    CHECK(mu.identical(exact(8, {{1, 1}, {2, -1}, {3, -1}, {5, -1}, {6, 1}, {7, -1}})));
    CHECK((Series::zeta(8) * mu).identical(Series::one(8)));
    CHECK_THROWS_AS(invert(exact(8, {{2, 1}})), Error);
    Series tiny(8, ScalarMode::floating);
    tiny.set(1, Scalar(FloatComplex(1e-14, 0.0)));
    CHECK_THROWS_AS(invert(tiny), Error);
}

TEST_CASE("invert(zeta_N) is the Mobius function")
{
    for (u64 n : {1, 2, 30, 128, 500}) {
        const auto mu = oracle::mobius(n);
        const Series inv = invert(Series::zeta(n));
        for (u64 k = 1; k <= n; ++k) {
            REQUIRE(inv.coeff(k) == q(mu[k]));
        }
    }
}

TEST_CASE("invert agrees with the dense triangular solve")
{
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        RandomSeriesSpec spec;
        spec.window = static_cast<u64>(rng.uniform(1, 128));
        spec.density = 0.3;
        const Series f = random_unit(rng, spec);
        const Series expected = helpers::from_dense(oracle::triangular_inverse(helpers::to_dense(f)));
        const Series inv = invert(f);
        REQUIRE(inv.identical(expected));
        REQUIRE(invert(inv).identical(f));
    }
}

TEST_CASE("float inversion")
{
    const Series f = Series::zeta(64, ScalarMode::floating);
    const Series prod = f * invert(f);
    CHECK(prod.coeff(1).as_float() == FloatComplex(1.0, 0.0));
    for (u64 n = 2; n <= 64; ++n) {
        CHECK(std::abs(prod.coeff(n).as_float()) < 1e-12);
    }
}

TEST_CASE("multiplication agrees with dense convolution")
{
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        RandomSeriesSpec spec;
        spec.window = static_cast<u64>(rng.uniform(1, 200));
        spec.density = 0.2;
        const Series f = random_series(rng, spec);
        const Series g = random_series(rng, spec);
        const Series expected = helpers::from_dense(oracle::convolve(helpers::to_dense(f), helpers::to_dense(g)));
        REQUIRE((f * g).identical(expected));
    }
}

TEST_CASE("ring laws on random exact series")
{
    Rng rng(23);
    RandomSeriesSpec spec;
    spec.window = 512;
    spec.density = 0.05;
    for (int trial = 0; trial < 30; ++trial) {
        const Series f = random_series(rng, spec);
        const Series g = random_series(rng, spec);
        const Series h = random_series(rng, spec);
        REQUIRE((f * g).identical(g * f));
        REQUIRE(((f * g) * h).identical(f * (g * h)));
        REQUIRE((f * (g + h)).identical(f * g + f * h));
        REQUIRE((Series::one(spec.window) * f).identical(f));
        REQUIRE((f + g).identical(g + f));
    }
}

TEST_CASE("dilation")
{
    const PrimeTable table(1000);
    CHECK(dilate(exact(16, {{12, 1}}), q(1, 2), table).identical(exact(16, {{12, Rational(1, 8)}})));
    Rng rng(3);
    RandomSeriesSpec spec;
    spec.window = 256;
    spec.density = 0.2;
    for (int trial = 0; trial < 20; ++trial) {
        const Series f = random_series(rng, spec);
        const Series g = random_series(rng, spec);
        const Scalar r = random_scalar(rng, spec);
        const Scalar s = random_scalar(rng, spec);
        REQUIRE(dilate(f, q(1), table).identical(f));
        REQUIRE(dilate(dilate(f, r, table), s, table).identical(dilate(f, r * s, table)));
        REQUIRE(dilate(f * g, r, table).identical(dilate(f, r, table) * dilate(g, r, table)));
        const Series d = dilate(f, r, table);
        for (const auto& [n, c] : d.coeffs()) {
            REQUIRE(c == f.coeff(n) * pow(r, oracle::big_omega(n)));
        }
    }
}

TEST_CASE("l1 norm")
{
    CHECK(l1_norm(Series(8, ScalarMode::exact)) == 0.0);
    Series f(8, ScalarMode::exact);
    f.set(2, q(3));
    f.set(3, Scalar(ExactComplex(0, -4)));
    CHECK(l1_norm(f) == doctest::Approx(7.0));
    CHECK(l1_norm_exact(f) == Rational(7));
    Series g(8, ScalarMode::exact);
    g.set(1, Scalar(ExactComplex(3, 4)));
    CHECK(l1_norm_exact(g) == Rational(5));
    g.set(2, Scalar(ExactComplex(1, 1)));
    CHECK_FALSE(l1_norm_exact(g).has_value());
}

TEST_CASE("l1 norm is submultiplicative")
{
    Rng rng(29);
    RandomSeriesSpec spec;
    spec.window = 300;
    spec.density = 0.1;
    for (int trial = 0; trial < 50; ++trial) {
        const Series f = random_series(rng, spec);
        const Series g = random_series(rng, spec);
        REQUIRE(l1_norm(f * g) <= l1_norm(f) * l1_norm(g) * (1 + 1e-9) + 1e-12);
    }
}

TEST_CASE("modes convert")
{
    const Series f = exact(8, {{2, Rational(1, 4)}});
    const Series g = f.to_mode(ScalarMode::floating);
    CHECK(g.coeff(2).as_float() == FloatComplex(0.25, 0.0));
    CHECK(g.to_mode(ScalarMode::exact).identical(f));
    CHECK(f.truncated(1).is_zero());
    CHECK(f.with_window(100).window() == 100);
}
