#include "dseries/primes.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dseries/error.hpp"

namespace dseries {

bool checked_mul(u64 a, u64 b, u64 ceiling, u64& out) noexcept
{
    if (a != 0 && b > ceiling / a) {
        return false;
    }
    out = a * b;
    return out <= ceiling;
}

Factorization::Factorization(std::vector<PrimePower> entries) : entries_(std::move(entries))
{
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].index == 0 || entries_[i].exponent == 0) {
            fail(Errc::invalid_argument, "factorization entries need index >= 1 and exponent >= 1");
        }
        if (i > 0 && entries_[i - 1].index >= entries_[i].index) {
            fail(Errc::invalid_argument, "factorization indices must be strictly increasing");
        }
    }
}

std::uint32_t Factorization::omega() const noexcept
{
    std::uint32_t total = 0;
    for (const auto& e : entries_) {
        total += e.exponent;
    }
    return total;
}

std::uint32_t Factorization::exponent_of(std::uint32_t index) const noexcept
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const PrimePower& e, std::uint32_t i) { return e.index < i; });
    return (it != entries_.end() && it->index == index) ? it->exponent : 0;
}

PrimeTable::PrimeTable(u64 bound) : bound_(bound)
{
    if (bound < 2) {
        fail(Errc::invalid_argument, "sieve bound must be >= 2");
    }
    if (bound > std::numeric_limits<std::uint32_t>::max()) {
        fail(Errc::invalid_argument, "sieve bound exceeds 2^32 - 1");
    }
    // Linear sieve: every composite is struck exactly once by its smallest prime.
    smallest_factor_.assign(bound + 1, 0);
    for (u64 n = 2; n <= bound; ++n) {
        if (smallest_factor_[n] == 0) {
            smallest_factor_[n] = static_cast<std::uint32_t>(n);
            primes_.push_back(n);
        }
        const u64 spf = smallest_factor_[n];
        for (u64 p : primes_) {
            if (p > spf || p * n > bound) {
                break;
            }
            smallest_factor_[p * n] = static_cast<std::uint32_t>(p);
        }
    }
}

u64 PrimeTable::prime(std::uint32_t index) const
{
    if (index == 0 || index > primes_.size()) {
        fail(Errc::table_too_small, "prime index " + std::to_string(index) + " beyond table of " +
                                        std::to_string(primes_.size()) + " primes");
    }
    return primes_[index - 1];
}

std::uint32_t PrimeTable::index_of(u64 p) const noexcept
{
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) {
        return 0;
    }
    return static_cast<std::uint32_t>(it - primes_.begin()) + 1;
}

bool PrimeTable::is_prime(u64 n) const noexcept
{
    return n >= 2 && n <= bound_ && smallest_factor_[n] == n;
}

std::size_t PrimeTable::prime_pi(u64 x) const
{
    if (x > bound_) {
        fail(Errc::invalid_argument, "pi(x) requested past the sieve bound");
    }
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

void PrimeTable::check_range(u64 n) const
{
    if (n < 1 || n > bound_) {
        fail(Errc::invalid_argument,
             std::to_string(n) + " outside [1, " + std::to_string(bound_) + "]");
    }
}

u64 PrimeTable::smallest_factor(u64 n) const
{
    check_range(n);
    if (n == 1) {
        fail(Errc::invalid_argument, "1 has no prime factor");
    }
    return smallest_factor_[n];
}

Factorization PrimeTable::factor(u64 n) const
{
    check_range(n);
    std::vector<PrimePower> entries;
    while (n > 1) {
        const u64 p = smallest_factor_[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        entries.push_back({index_of(p), e});
    }
    return Factorization(std::move(entries));
}

Factorization PrimeTable::factor_smooth(u64 n) const
{
    if (n == 0) {
        fail(Errc::invalid_argument, "cannot factor 0");
    }
    if (n <= bound_) {
        return factor(n);
    }
    std::vector<PrimePower> entries;
    for (std::size_t i = 0; i < primes_.size() && n > bound_; ++i) {
        const u64 p = primes_[i];
        if (p > n / p) {
            // n is prime; it lies outside the table since n > bound.
            break;
        }
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) {
            entries.push_back({static_cast<std::uint32_t>(i + 1), e});
        }
    }
    if (n > bound_) {
        fail(Errc::table_too_small, "integer has a prime factor above the sieve bound " + std::to_string(bound_));
    }
    // The cofactor is sieve-sized and its primes are all at least the last
    // trial divisor, so the entries stay sorted.
    const Factorization rest = factor(n);
    for (const auto& e : rest.entries()) {
        if (!entries.empty() && entries.back().index == e.index) {
            entries.back().exponent += e.exponent;
        } else {
            entries.push_back(e);
        }
    }
    return Factorization(std::move(entries));
}

std::uint32_t PrimeTable::omega(u64 n) const { return factor(n).omega(); }

bool PrimeTable::semigroup_member(u64 n, std::span<const std::uint32_t> indices) const
{
    check_range(n);
    while (n > 1) {
        const u64 p = smallest_factor_[n];
        if (!std::binary_search(indices.begin(), indices.end(), index_of(p))) {
            return false;
        }
        n /= p;
    }
    return true;
}

u64 PrimeTable::value(const Factorization& f, u64 ceiling) const
{
    u64 result = 1;
    for (const auto& e : f.entries()) {
        const u64 p = prime(e.index);
        for (std::uint32_t k = 0; k < e.exponent; ++k) {
            if (!checked_mul(result, p, ceiling, result)) {
                fail(Errc::overflow, "integer product exceeds ceiling " + std::to_string(ceiling));
            }
        }
    }
    return result;
}

} // namespace dseries
