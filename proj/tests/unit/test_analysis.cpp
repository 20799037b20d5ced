#include <doctest.h>

#include <cmath>

#include "dseries/analysis.hpp"
#include "dseries/bohr.hpp"
#include "dseries/error.hpp"
#include "dseries/group.hpp"
#include "dseries/random.hpp"
#include "helpers.hpp"

using namespace dseries;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t(10000);
    return t;
}

Series fseries(u64 window, std::initializer_list<std::pair<u64, FloatComplex>> coeffs)
{
    Series f(window, ScalarMode::floating);
    for (const auto& [n, c] : coeffs) {
        f.set(n, Scalar(c));
    }
    return f;
}

RandomSeriesSpec float_spec(u64 window, double density)
{
    RandomSeriesSpec spec;
    spec.window = window;
    spec.density = density;
    spec.mode = ScalarMode::floating;
    return spec;
}

} // namespace

TEST_CASE("partial sums")
{
    CHECK(partial_sum(Series::one(10), {0.3, 7.0}) == FloatComplex(1.0, 0.0));
    CHECK(std::abs(partial_sum(fseries(4, {{2, 1.0}}), 1.0) - 0.5) < 1e-15);
    Rng rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        const Series f = random_series(rng, float_spec(300, 0.1));
        const FloatComplex s(rng.uniform_real(0.1, 3.0), rng.uniform_real(-100.0, 100.0));
        const FloatComplex want = oracle::dirichlet_sum(helpers::to_float_map(f), s);
        REQUIRE(std::abs(partial_sum(f, s) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        const auto p = bohr_lift(f, table());
        REQUIRE(std::abs(poly_eval(p, eval_c(s, p.nvars(), table())) - partial_sum(f, s)) <=
                1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("line sup examples")
{
    const auto z = line_sup(Series::zeta(12, ScalarMode::floating), 0.0, 100.0, 2001);
    CHECK(z.sup_estimate == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(std::abs(z.argmax_t) < 1e-6);
    CHECK(line_sup(fseries(4, {{2, 1.0}}), 0.0, 50.0, 11).sup_estimate == doctest::Approx(1.0));
    CHECK_THROWS_AS(line_sup(Series::one(2), 0.0, 10.0, 1), Error);
    CHECK_THROWS_AS(line_sup(Series::one(2), 0.0, 0.0, 10), Error);
}

TEST_CASE("line sup stays below the torus sup")
{
    Rng rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        const Series f = random_series(rng, float_spec(20, 0.4));
        const double line = line_sup(f, 0.0, 500.0, 20001).sup_estimate;
        const double torus = torus_sup(bohr_lift(f, table()), 1.0).value;
        REQUIRE(line <= torus + 1e-9);
    }
}

TEST_CASE("line sup is monotone in T and samples")
{
    Rng rng(127);
    LineSupOptions plain;
    plain.refine = false;
    for (int trial = 0; trial < 10; ++trial) {
        const Series f = random_series(rng, float_spec(30, 0.3));
        // Doubling T with 2k-1 samples keeps every old grid point.
        const double a = line_sup(f, 0.0, 50.0, 1001, plain).sup_estimate;
        const double b = line_sup(f, 0.0, 100.0, 2001, plain).sup_estimate;
        const double c = line_sup(f, 0.0, 50.0, 2001, plain).sup_estimate;
        REQUIRE(a <= b);
        REQUIRE(a <= c);
        REQUIRE(a <= line_sup(f, 0.0, 50.0, 1001).sup_estimate);
    }
}

TEST_CASE("line sup is independent of the worker count")
{
    Rng rng(131);
    const Series f = random_series(rng, float_spec(40, 0.3));
    LineSupOptions one;
    LineSupOptions three;
    three.parallel = 3;
    const auto a = line_sup(f, 0.2, 300.0, 30001, one);
    const auto b = line_sup(f, 0.2, 300.0, 30001, three);
    CHECK(a.sup_estimate == b.sup_estimate);
    CHECK(a.argmax_t == b.argmax_t);
}

TEST_CASE("abscissa surrogate")
{
    const auto zeta = sigma_u_plus_estimate(Series::zeta(16, ScalarMode::floating), table());
    CHECK(zeta.value == doctest::Approx(1.0).epsilon(1e-12));
    const auto single = sigma_u_plus_estimate(fseries(8, {{2, 1.0}}), table());
    CHECK(single.value == 0.0);
    CHECK(std::abs(single.unclamped) < 1e-15);
    const auto small = sigma_u_plus_estimate(fseries(8, {{1, 0.5}}), table());
    CHECK(small.value == 0.0);
    CHECK(small.unclamped < 0.0);
    CHECK(std::isinf(sigma_u_plus_estimate(Series(8, ScalarMode::floating), table()).unclamped));
    CHECK_THROWS_AS(sigma_u_plus_estimate(Series::one(1, ScalarMode::floating), table()), Error);
}

TEST_CASE("abscissa surrogate matches the definition cut by cut")
{
    Rng rng(137);
    for (int trial = 0; trial < 5; ++trial) {
        const Series f = random_series(rng, float_spec(18, 0.4));
        double best = -INFINITY;
        for (u64 cut = 2; cut <= f.window(); ++cut) {
            const double sup = torus_sup(bohr_lift(f.truncated(cut), table()), 1.0).value;
            if (sup > 0.0) {
                best = std::max(best, std::log(sup) / std::log(static_cast<double>(cut)));
            }
        }
        REQUIRE(sigma_u_plus_estimate(f, table()).unclamped == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("abscissa surrogate does not grow under dilation")
{
    Rng rng(139);
    for (int trial = 0; trial < 10; ++trial) {
        const Series f = random_series(rng, float_spec(20, 0.3));
        const double r = rng.uniform_real(0.05, 1.0);
        const Series fr = dilate(f, Scalar(FloatComplex(r, 0.0)), table());
        REQUIRE(sigma_u_plus_estimate(fr, table()).value <= sigma_u_plus_estimate(f, table()).value + 1e-9);
    }
}

TEST_CASE("seminorms")
{
    const Series x1 = fseries(4, {{2, 1.0}});
    for (double r : {0.1, 0.5, 0.9, 1.0}) {
        CHECK(seminorm_Pr(x1, r, table()) == doctest::Approx(r).epsilon(1e-12));
        CHECK(seminorm_Pr(Series::one(4, ScalarMode::floating), r, table()) == 1.0);
    }
    Rng rng(149);
    for (int trial = 0; trial < 10; ++trial) {
        const Series f = random_series(rng, float_spec(24, 0.3));
        const double r1 = rng.uniform_real(0.1, 1.0);
        const double r2 = rng.uniform_real(r1, 1.0);
        REQUIRE(seminorm_Pr(f, r1, table()) <= seminorm_Pr(f, r2, table()) + 1e-9);
        REQUIRE(seminorm_Pr(f, r2, table()) <= l1_norm(f) + 1e-12);
    }
}

TEST_CASE("seminorm estimator is invariant under relabelling for invariant series")
{
    const PermutationGroup g({Permutation::parse("(1 2)")});
    Rng rng(151);
    RandomSeriesSpec spec;
    spec.density = 0.4;
    const auto support = smooth_support(3, 2, table());
    for (int trial = 0; trial < 10; ++trial) {
        const Series f =
            project_invariant(random_series_on(rng, support, 30, spec), g, UnresolvedPolicy::error, table())
                .to_mode(ScalarMode::floating);
        const Series moved = act(g.generators()[0], f, table());
        REQUIRE(moved.coeffs() == f.coeffs());
        REQUIRE(seminorm_Pr(moved, 0.7, table()) == seminorm_Pr(f, 0.7, table()));
    }
}

TEST_CASE("convexity check")
{
    std::vector<double> grid;
    for (int i = 1; i <= 17; ++i) {
        grid.push_back(i / 18.0);
    }
    const auto affine = convexity_check(seminorm_profile(fseries(4, {{2, 1.0}}), grid, table()));
    CHECK(affine.pass);
    CHECK_FALSE(affine.constant);
    for (double d : affine.defects) {
        CHECK(std::abs(d) < 1e-9);
    }
    const auto flat = convexity_check(seminorm_profile(Series::one(4, ScalarMode::floating), grid, table()));
    CHECK(flat.pass);
    CHECK(flat.constant);

    SeminormProfile concave{{0.1, 0.2, 0.4}, {1.0, 3.0, 3.5}};
    CHECK_FALSE(convexity_check(concave).pass);
    SeminormProfile decreasing{{0.1, 0.2, 0.4}, {3.0, 2.0, 1.0}};
    const auto dec = convexity_check(decreasing);
    CHECK_FALSE(dec.monotone);
    CHECK_FALSE(dec.pass);
    CHECK_THROWS_AS(convexity_check(SeminormProfile{{0.1, 0.2}, {1.0, 2.0}}), Error);
    CHECK_THROWS_AS(convexity_check(SeminormProfile{{0.1, 0.2, 0.3}, {1.0, 0.0, 2.0}}), Error);

    Rng rng(157);
    RandomSeriesSpec spec = float_spec(16, 0.4);
    for (int trial = 0; trial < 10; ++trial) {
        Series f(spec.window, ScalarMode::floating);
        const Series raw = random_series(rng, spec);
        for (const auto& [n, c] : raw.coeffs()) {
            f.set(n, Scalar(FloatComplex(std::abs(c.as_float()), 0.0)));
        }
        f.set(2, Scalar(FloatComplex(1.0, 0.0)));
        REQUIRE(convexity_check(seminorm_profile(f, grid, table())).pass);
    }
}

TEST_CASE("Perron recovery")
{
    const Series f = fseries(8, {{5, 3.0}});
    const auto at5 = perron_recover(f, 5, 2.0, 2000.0, 400000);
    CHECK(std::abs(at5.value - 3.0) <= 1e-3);
    const double bound2 = perron_error_bound(f, 2, 2.0, 2000.0, 400000);
    const auto at2 = perron_recover(f, 2, 2.0, 2000.0, 400000);
    CHECK(std::abs(at2.value) <= bound2);
    CHECK(std::abs(at2.value) <= 1e-3);
    const auto one = perron_recover(Series::one(4, ScalarMode::floating), 1, 0.7, 123.0, 1000);
    CHECK(std::abs(one.value - 1.0) < 1e-8);
    CHECK(one.steps == 1000);
    CHECK_THROWS_AS(perron_recover(f, 5, 0.0, 10.0, 10), Error);
    const LineEvaluator bad = [](FloatComplex) { return FloatComplex(NAN, 0.0); };
    CHECK_THROWS_AS(perron_recover(bad, 1, 1.0, 10.0, 10), Error);
}

TEST_CASE("Perron recovery against the closed-form integral")
{
    Rng rng(163);
    for (int trial = 0; trial < 10; ++trial) {
        const Series f = random_series(rng, float_spec(40, 0.2));
        const u64 n = static_cast<u64>(rng.uniform(1, 40));
        const double kappa = rng.uniform_real(0.5, 2.0);
        const double R = 300.0;
        const u64 steps = 60000;
        const auto got = perron_recover(f, n, kappa, R, steps);
        const FloatComplex exact = oracle::perron_integral(helpers::to_float_map(f), n, kappa, R);
        const FloatComplex an = n <= f.window() ? f.coeff(n).as_float() : FloatComplex{};
        REQUIRE(std::abs(got.value - an) <= perron_error_bound(f, n, kappa, R, steps));
        // The quadrature itself is close to the exact truncated integral.
        double mass = 0.0;
        for (const auto& [m, c] : f.coeffs()) {
            const double w = std::log(static_cast<double>(n) / static_cast<double>(m));
            mass += c.abs() * std::pow(static_cast<double>(n) / static_cast<double>(m), kappa) * w * w;
        }
        const double h = 2.0 * R / static_cast<double>(steps);
        REQUIRE(std::abs(got.value - exact) <= mass * h * h / 12.0 + 1e-9);
    }
}
