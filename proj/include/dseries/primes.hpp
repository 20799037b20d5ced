#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dseries {

using u64 = std::uint64_t;

// Largest integer the library will ever produce as a series index.
inline constexpr u64 default_ceiling = (u64{1} << 63) - 1;

/// One prime power p_index^exponent, with `index` 1-based into the ordered primes.
struct PrimePower {
    std::uint32_t index;
    std::uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
    friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// Factorization of a positive integer as prime-index/exponent pairs with
/// strictly increasing indices. The integer 1 is the empty factorization.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<PrimePower> entries);

    std::span<const PrimePower> entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    /// Total number of prime factors counted with multiplicity.
    std::uint32_t omega() const noexcept;

    /// Exponent of the index-th prime, 0 if absent.
    std::uint32_t exponent_of(std::uint32_t index) const noexcept;

    std::uint32_t max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().index; }

    friend bool operator==(const Factorization&, const Factorization&) = default;
    friend auto operator<=>(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> entries_;
};

/// Primes up to a fixed bound together with a smallest-prime-factor sieve.
/// Immutable after construction.
class PrimeTable {
public:
    explicit PrimeTable(u64 bound);

    u64 bound() const noexcept { return bound_; }
    std::size_t prime_count() const noexcept { return primes_.size(); }
    std::span<const u64> primes() const noexcept { return primes_; }

    /// The index-th prime (1-based). Throws table_too_small past the table.
    u64 prime(std::uint32_t index) const;

    /// 1-based index of a stored prime; 0 when p is not a prime of the table.
    std::uint32_t index_of(u64 p) const noexcept;

    bool is_prime(u64 n) const noexcept;

    /// pi(x) for x <= bound.
    std::size_t prime_pi(u64 x) const;

    u64 smallest_factor(u64 n) const;

    /// Factorization of 1 <= n <= bound through the sieve.
    Factorization factor(u64 n) const;

    /// Factorization of any n >= 1 whose prime factors all lie in the table.
    /// Uses the sieve when n <= bound and trial division by stored primes
    /// otherwise; throws table_too_small when n has a larger prime factor.
    Factorization factor_smooth(u64 n) const;

    std::uint32_t omega(u64 n) const;

    /// True iff every prime factor of n has its index in `indices` (sorted).
    bool semigroup_member(u64 n, std::span<const std::uint32_t> indices) const;

    /// Product of p_i^e over the entries; throws overflow past `ceiling`.
    u64 value(const Factorization& f, u64 ceiling = default_ceiling) const;

private:
    void check_range(u64 n) const;

    u64 bound_;
    std::vector<u64> primes_;
    std::vector<std::uint32_t> smallest_factor_;
};

/// a*b if it does not exceed `ceiling`.
bool checked_mul(u64 a, u64 b, u64 ceiling, u64& out) noexcept;

} // namespace dseries
