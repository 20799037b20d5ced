#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>

#include "dseries/poly.hpp"
#include "dseries/primes.hpp"
#include "dseries/series.hpp"

namespace dseries {

/// Point of the polydisc with finitely many nonzero coordinates; coordinates
/// that are not stored are 0.
class PolydiscPoint {
public:
    using Coords = std::map<std::uint32_t, FloatComplex>;

    PolydiscPoint() = default;
    explicit PolydiscPoint(Coords coords) : coords_(std::move(coords)) {}

    const Coords& coords() const noexcept { return coords_; }
    FloatComplex operator[](std::uint32_t index) const;
    void set(std::uint32_t index, FloatComplex z) { coords_.insert_or_assign(index, z); }
    double max_modulus() const;

private:
    Coords coords_;
};

/// Bohr lift: n^{-s} with n = prod p_i^{k_i} becomes prod x_i^{k_i}.
/// nvars is pi(window); the window must not exceed the table bound.
SparseMultiPoly bohr_lift(const Series& f, const PrimeTable& table);

/// Inverse of the lift. Monomials whose integer exceeds the table bound
/// raise overflow_window. The window defaults to the largest such integer.
Series bohr_drop(const SparseMultiPoly& p, const PrimeTable& table, std::optional<u64> window = std::nullopt);

/// Direct sum of the terms at z. Coordinates of modulus > 1 are refused
/// unless `allow_outside` is set.
FloatComplex poly_eval(const SparseMultiPoly& p, const PolydiscPoint& z, bool allow_outside = false);

/// c(s) = (2^{-s}, 3^{-s}, ..., p_M^{-s}).
PolydiscPoint eval_c(FloatComplex s, std::uint32_t nvars, const PrimeTable& table);

using PolydiscEvaluator = std::function<FloatComplex(const PolydiscPoint&)>;

inline constexpr u64 default_grid_budget = u64{1} << 24;

/// Coefficient of x^target recovered from `f` by the discrete Cauchy
/// integral over the uniform Q^k grid on the torus with radii r_1..r_k, where
/// k = radii.size() and all variables past k are held at 0, as is every
/// variable given radius 0. Exact (up to rounding) when the degree of f in
/// each integrated variable is below Q; aliasing is undetectable here, so the
/// caller owns that bound.
FloatComplex cauchy_coefficient(const PolydiscEvaluator& f, const Monomial& target, std::uint32_t grid_per_var,
                                std::span<const double> radii, u64 budget = default_grid_budget);

/// a_n recovered from the lift of `f`, integrating at radius r over the
/// variables of the primes dividing n (the other variables are held at 0).
/// Throws invalid_argument when the grid is not finer than the lift's degree
/// in one of those variables.
FloatComplex cauchy_coefficient(const Series& f, u64 n, std::uint32_t grid_per_var, double radius,
                                const PrimeTable& table, u64 budget = default_grid_budget);

} // namespace dseries
