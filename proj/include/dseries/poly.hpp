#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dseries/primes.hpp"
#include "dseries/scalar.hpp"

namespace dseries {

// Exponent vector x_{i1}^{e1} ... x_{ik}^{ek}, sparse and sorted by variable.
// Shares its representation with Factorization: variable i is the i-th prime.
using Monomial = Factorization;

/// Sparse multivariate polynomial in x_1..x_M with coefficients of one mode.
class SparseMultiPoly {
public:
    using Map = std::map<Monomial, Scalar>;

    SparseMultiPoly(std::uint32_t nvars, ScalarMode mode) : nvars_(nvars), mode_(mode) {}
    SparseMultiPoly(std::uint32_t nvars, ScalarMode mode, Map terms);

    static SparseMultiPoly constant(const Scalar& c, std::uint32_t nvars = 0);
    /// The single variable x_index.
    static SparseMultiPoly variable(std::uint32_t index, ScalarMode mode = ScalarMode::exact);

    std::uint32_t nvars() const noexcept { return nvars_; }
    ScalarMode mode() const noexcept { return mode_; }
    const Map& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Scalar coeff(const Monomial& m) const;
    void set(const Monomial& m, Scalar c);

    /// Largest exponent of x_index over all terms.
    std::uint32_t degree_in(std::uint32_t index) const;
    std::uint32_t total_degree() const;
    /// Sorted indices of variables that occur with positive exponent.
    std::vector<std::uint32_t> variables() const;

    SparseMultiPoly to_mode(ScalarMode mode) const;
    SparseMultiPoly with_nvars(std::uint32_t nvars) const;

    friend bool operator==(const SparseMultiPoly& a, const SparseMultiPoly& b)
    {
        return a.mode_ == b.mode_ && a.terms_ == b.terms_;
    }

private:
    std::uint32_t nvars_;
    ScalarMode mode_;
    Map terms_;
};

/// x^a * x^b.
Monomial monomial_product(const Monomial& a, const Monomial& b);

SparseMultiPoly poly_add(const SparseMultiPoly& p, const SparseMultiPoly& q);
SparseMultiPoly poly_sub(const SparseMultiPoly& p, const SparseMultiPoly& q);
SparseMultiPoly poly_mul(const SparseMultiPoly& p, const SparseMultiPoly& q);
SparseMultiPoly poly_scale(const Scalar& c, const SparseMultiPoly& p);

/// Substitution x_i -> r x_i for every variable.
SparseMultiPoly poly_dilate(const SparseMultiPoly& p, const Scalar& r);

/// Substitution x_i -> 0 for every variable not in `keep` (sorted).
SparseMultiPoly poly_restrict_variables(const SparseMultiPoly& p, std::span<const std::uint32_t> keep);

/// Relabels variables: x_i -> x_{map(i)}; `map` is given as a callable.
template <typename IndexMap>
SparseMultiPoly poly_relabel(const SparseMultiPoly& p, IndexMap&& map, std::uint32_t nvars);

/// Keeps monomials whose integer p^alpha is at most `window`.
SparseMultiPoly poly_truncate_to_window(const SparseMultiPoly& p, u64 window, const PrimeTable& table);

template <typename IndexMap>
SparseMultiPoly poly_relabel(const SparseMultiPoly& p, IndexMap&& map, std::uint32_t nvars)
{
    SparseMultiPoly result(nvars, p.mode());
    for (const auto& [m, c] : p.terms()) {
        std::vector<PrimePower> entries;
        entries.reserve(m.entries().size());
        for (const auto& e : m.entries()) {
            entries.push_back({static_cast<std::uint32_t>(map(e.index)), e.exponent});
        }
        std::sort(entries.begin(), entries.end());
        result.set(Monomial(std::move(entries)), c);
    }
    return result;
}

} // namespace dseries
