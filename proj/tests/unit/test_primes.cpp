#include <doctest.h>

#include <vector>

#include "dseries/error.hpp"
#include "dseries/primes.hpp"
#include "dseries/random.hpp"
#include "oracles.hpp"

using namespace dseries;

TEST_CASE("sieve lists the primes")
{
    const PrimeTable t10(10);
    CHECK(std::vector<u64>(t10.primes().begin(), t10.primes().end()) == std::vector<u64>{2, 3, 5, 7});
    const PrimeTable t2(2);
    CHECK(t2.prime_count() == 1);
    CHECK(t2.prime(1) == 2);
    CHECK_THROWS_AS(PrimeTable(1), Error);
    CHECK_THROWS_AS(t2.prime(2), Error);
}

TEST_CASE("pi(10^6) against trial division")
{
    const PrimeTable table(1000000);
    CHECK(table.prime_count() == oracle::prime_pi(1000000));
    CHECK(table.prime_count() == 78498);
}

TEST_CASE("pi(x) matches trial division up to 10^4")
{
    const PrimeTable table(10000);
    u64 count = 0;
    for (u64 x = 1; x <= 10000; ++x) {
        count += oracle::is_prime(x) ? 1 : 0;
        REQUIRE(table.prime_pi(x) == count);
        REQUIRE(table.is_prime(x) == oracle::is_prime(x));
    }
    for (std::uint32_t i = 1; i <= table.prime_count(); ++i) {
        REQUIRE(table.index_of(table.prime(i)) == i);
    }
    CHECK(table.index_of(4) == 0);
}

TEST_CASE("factor examples")
{
    const PrimeTable table(10000000);
    CHECK(table.factor(12) == Factorization({{1, 2}, {2, 1}}));
    CHECK(table.factor(1).empty());
    const Factorization f = table.factor(9699690);
    REQUIRE(f.entries().size() == 8);
    u64 product = 1;
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(f.entries()[k].index == k + 1);
        CHECK(f.entries()[k].exponent == 1);
        product *= table.prime(f.entries()[k].index);
    }
    CHECK(product == 9699690);
    CHECK_THROWS_AS(table.factor(0), Error);
    CHECK_THROWS_AS(table.factor(10000001), Error);
}

TEST_CASE("factor multiplies back and agrees with trial division")
{
    const PrimeTable table(200000);
    const auto primes = oracle::first_primes(table.prime_count());
    for (u64 n = 1; n <= 200000; n += 7) {
        const Factorization f = table.factor(n);
        u64 product = 1;
        std::vector<u64> factors;
        for (const auto& e : f.entries()) {
            for (std::uint32_t k = 0; k < e.exponent; ++k) {
                product *= primes[e.index - 1];
                factors.push_back(primes[e.index - 1]);
            }
        }
        REQUIRE(product == n);
        REQUIRE(factors == oracle::prime_factors(n));
        REQUIRE(table.omega(n) == oracle::big_omega(n));
    }
}

TEST_CASE("factor_smooth beyond the sieve")
{
    const PrimeTable table(100);
    CHECK(table.factor_smooth(2 * 97 * 97) == Factorization({{1, 1}, {25, 2}}));
    CHECK_THROWS_AS(table.factor_smooth(101 * 2), Error);
    CHECK_THROWS_AS(table.factor_smooth(0), Error);
}

TEST_CASE("omega")
{
    const PrimeTable table(1 << 21);
    CHECK(table.omega(12) == 3);
    CHECK(table.omega(1) == 0);
    for (std::uint32_t k = 0; k <= 20; ++k) {
        CHECK(table.omega(u64{1} << k) == k);
    }
    CHECK_THROWS_AS(table.omega(0), Error);
}

TEST_CASE("omega is completely additive")
{
    const PrimeTable table(1000000);
    Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto m = static_cast<u64>(rng.uniform(1, 1000));
        const auto n = static_cast<u64>(rng.uniform(1, 1000));
        REQUIRE(table.omega(m * n) == table.omega(m) + table.omega(n));
    }
}

TEST_CASE("semigroup membership")
{
    const PrimeTable table(100);
    const std::vector<std::uint32_t> first_two{1, 2};
    CHECK(table.semigroup_member(6, first_two));
    CHECK_FALSE(table.semigroup_member(10, first_two));
    CHECK(table.semigroup_member(1, std::span<const std::uint32_t>{}));
    CHECK_FALSE(table.semigroup_member(2, std::span<const std::uint32_t>{}));
    CHECK_THROWS_AS(table.semigroup_member(101, first_two), Error);
}

TEST_CASE("value and checked multiplication")
{
    const PrimeTable table(100);
    CHECK(table.value(Factorization({{1, 3}, {3, 1}})) == 40);
    CHECK_THROWS_AS(table.value(Factorization({{1, 64}})), Error);
    CHECK_THROWS_AS(table.value(Factorization({{1, 3}}), 7), Error);
    u64 out = 0;
    CHECK(checked_mul(3, 4, 12, out));
    CHECK(out == 12);
    CHECK_FALSE(checked_mul(u64{1} << 40, u64{1} << 40, default_ceiling, out));
}

TEST_CASE("factorization rejects unsorted entries")
{
    CHECK_THROWS_AS(Factorization({{2, 1}, {1, 1}}), Error);
    CHECK_THROWS_AS(Factorization({{1, 0}}), Error);
    CHECK(Factorization({{1, 2}, {3, 1}}).omega() == 3);
    CHECK(Factorization({{1, 2}, {3, 1}}).exponent_of(3) == 1);
    CHECK(Factorization({{1, 2}, {3, 1}}).exponent_of(2) == 0);
}
