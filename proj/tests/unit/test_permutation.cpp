#include <doctest.h>

#include "dseries/error.hpp"
#include "dseries/permutation.hpp"
#include "dseries/random.hpp"

using namespace dseries;

TEST_CASE("cycle notation")
{
    const auto p = Permutation::parse("(1 2)(4 5 6)");
    CHECK(p(1) == 2);
    CHECK(p(2) == 1);
    CHECK(p(3) == 3);
    CHECK(p(4) == 5);
    CHECK(p(6) == 4);
    CHECK(p.inverse_apply(4) == 6);
    CHECK(p.max_moved() == 6);
    CHECK(Permutation::parse(p.to_string()) == p);
    CHECK(Permutation::parse("()").is_identity());
    CHECK(Permutation::parse("").is_identity());
    CHECK(Permutation::parse(" (3) ").is_identity());
    CHECK(Permutation::parse("()").to_string() == "()");
}

TEST_CASE("malformed cycle notation")
{
    CHECK_THROWS_AS(Permutation::parse("(1 2"), Error);
    CHECK_THROWS_AS(Permutation::parse("1 2"), Error);
    CHECK_THROWS_AS(Permutation::parse("(1 2)(2 3)"), Error);
    CHECK_THROWS_AS(Permutation::parse("(0 1)"), Error);
    CHECK_THROWS_AS(Permutation::parse("(1 x)"), Error);
}

TEST_CASE("from_map validates")
{
    CHECK_THROWS_AS(Permutation::from_map({{1, 2}}), Error);
    CHECK_THROWS_AS(Permutation::from_map({{1, 2}, {2, 2}}), Error);
    CHECK(Permutation::from_map({{1, 1}}).is_identity());
    CHECK(Permutation::from_map({{1, 2}, {2, 1}}) == Permutation::parse("(1 2)"));
}

TEST_CASE("composition and inverse")
{
    const auto a = Permutation::parse("(1 2 3)");
    const auto b = Permutation::parse("(1 2)");
    const auto ab = compose(a, b);
    for (std::uint32_t i = 1; i <= 4; ++i) {
        CHECK(ab(i) == a(b(i)));
    }
    CHECK(compose(a, a.inverse()).is_identity());
    CHECK(compose(a, compose(a, a)).is_identity());
    CHECK_FALSE(compose(a, b) == compose(b, a));

    Rng rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_permutation(rng, 12, 6);
        const auto y = random_permutation(rng, 12, 6);
        const auto z = random_permutation(rng, 12, 6);
        REQUIRE(compose(compose(x, y), z) == compose(x, compose(y, z)));
        REQUIRE(compose(x, y).inverse() == compose(y.inverse(), x.inverse()));
        for (std::uint32_t i = 1; i <= 13; ++i) {
            REQUIRE(x.inverse_apply(x(i)) == i);
        }
    }
}

TEST_CASE("the zigzag infinite cycle")
{
    const auto z = Permutation::parse("(... 4 2 1 3 5 ...)");
    CHECK(Permutation::parse("zigzag").to_string() == z.to_string());
    CHECK_FALSE(z.finite_support());
    CHECK(z(4) == 2);
    CHECK(z(2) == 1);
    CHECK(z(1) == 3);
    CHECK(z(3) == 5);
    CHECK(z(5) == 7);
    for (std::uint32_t i = 1; i < 1000; ++i) {
        REQUIRE(z.inverse_apply(z(i)) == i);
        REQUIRE(z(z.inverse_apply(i)) == i);
    }
    const auto zz = compose(z, z);
    CHECK(zz(2) == 3);
    CHECK(z.inverse()(1) == 2);
    CHECK_THROWS_AS(z.support_map(), Error);
    CHECK_THROWS_AS(z.max_moved(), Error);
}
