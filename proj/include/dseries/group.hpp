#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dseries/permutation.hpp"
#include "dseries/poly.hpp"
#include "dseries/primes.hpp"
#include "dseries/series.hpp"

namespace dseries {

inline constexpr std::size_t default_enumeration_cap = 10000;

/// Group generated by permutations of the prime indices. When every
/// generator is finitely supported and the group has at most
/// `enumeration_cap` elements, the full element list is kept.
class PermutationGroup {
public:
    explicit PermutationGroup(std::vector<Permutation> generators,
                              std::size_t enumeration_cap = default_enumeration_cap);

    const std::vector<Permutation>& generators() const noexcept { return generators_; }
    std::size_t enumeration_cap() const noexcept { return cap_; }
    bool enumerated() const noexcept { return elements_.has_value(); }

    /// Sorted element list; throws group_too_large when not enumerated.
    const std::vector<Permutation>& elements() const;
    std::size_t order() const { return elements().size(); }

    bool finitely_supported() const noexcept;

private:
    std::vector<Permutation> generators_;
    std::size_t cap_;
    std::optional<std::vector<Permutation>> elements_;
};

enum class OrbitStatus { finite, unresolved };

/// Orbit of an integer under n -> sigma^(n) for the generators and inverses.
struct IntegerOrbit {
    u64 seed = 1;
    /// Sorted. For an unresolved orbit: the members found below the bound.
    std::vector<u64> members;
    OrbitStatus status = OrbitStatus::finite;
    /// Unresolved means some image is certified to exceed this value.
    u64 bound = 0;
};

struct IndexOrbit {
    std::vector<std::uint32_t> members;
    OrbitStatus status = OrbitStatus::finite;
};

/// Orbits of the prime indices 1..M, ordered by smallest member.
struct OrbitPartition {
    std::uint32_t index_bound = 0;
    std::vector<IndexOrbit> orbits;
};

enum class UnresolvedPolicy { error, zero_unresolved };

UnresolvedPolicy parse_policy(const std::string& text);

/// Completely multiplicative extension: prod p_i^{k_i} -> prod p_{sigma(i)}^{k_i}.
Factorization hat_apply(const Permutation& sigma, const Factorization& n);
/// Integer form; throws table_too_small for an image prime outside the table
/// and overflow past `ceiling`.
u64 hat_apply(const Permutation& sigma, u64 n, const PrimeTable& table, u64 ceiling = default_ceiling);

/// S_sigma: the coefficient at k moves to sigma^(k). The window grows to the
/// largest image.
Series act(const Permutation& sigma, const Series& f, const PrimeTable& table, u64 ceiling = default_ceiling);

/// Variable relabelling x_i -> x_{sigma(i)}, the lift-side image of `act`.
SparseMultiPoly act(const Permutation& sigma, const SparseMultiPoly& p);

/// Breadth-first closure of n under the generators and their inverses.
/// Unresolved when some image exceeds `bound`. An image prime past the table
/// is known only to exceed the sieve bound, so the reported bound drops to
/// table.bound() in that case.
IntegerOrbit integer_orbit(std::span<const Permutation> generators, u64 n, u64 bound, const PrimeTable& table);

/// Union-find partition of 1..M; an orbit is unresolved when a generator
/// or inverse maps one of its members past M.
OrbitPartition index_orbits(std::span<const Permutation> generators, std::uint32_t index_bound);

/// Orbit-averaging projection. Coefficients are averaged over each integer
/// orbit; integers whose prime indices are not all in finite index orbits
/// get 0 under zero_unresolved and raise unresolved_orbit under error. The
/// input is treated as the finite sum of its stored terms, and the window
/// grows to the largest orbit member.
Series project_invariant(const Series& f, const PermutationGroup& group, UnresolvedPolicy policy,
                         const PrimeTable& table, u64 ceiling = default_ceiling);

/// Plain average of act(sigma, f) over the enumerated group.
Series group_average(const Series& f, const PermutationGroup& group, const PrimeTable& table,
                     u64 ceiling = default_ceiling);

struct InvarianceReport {
    enum class Status { invariant, violated, inconclusive };
    Status status = Status::invariant;
    /// First failing support index and generator position when violated.
    u64 witness = 0;
    std::size_t generator = 0;
    /// Support indices whose images escape the window.
    std::vector<u64> escaping;
};

/// Checks a_{sigma^(n)} = a_n for every generator and stored n. Violations
/// take precedence over escapes past the window.
InvarianceReport is_invariant(const Series& f, const PermutationGroup& group, const PrimeTable& table);

/// Phi_P: keeps coefficients at integers whose prime indices all lie in
/// `indices` (sorted).
Series phi_restrict(const Series& f, std::span<const std::uint32_t> indices, const PrimeTable& table);

/// Sums over the orbits of monomials of total degree <= degree in x_1..x_M
/// under the enumerated group, ordered by degree then smallest monomial.
std::vector<SparseMultiPoly> invariant_orbit_sums(std::uint32_t nvars, std::uint32_t degree,
                                                  const PermutationGroup& group);

} // namespace dseries
