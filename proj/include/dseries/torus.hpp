#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dseries/bohr.hpp"
#include "dseries/poly.hpp"

namespace dseries {

struct TorusSupOptions {
    std::uint32_t grid_per_var = 32;
    /// Maximum coordinate-ascent sweeps per start.
    std::uint32_t refine_steps = 100;
    std::uint64_t seed = 0;
    std::uint32_t restarts = 8;
    /// Best grid points refined in addition to the random restarts.
    std::uint32_t grid_starts = 8;
    u64 budget = default_grid_budget;
    unsigned parallel = 1;
};

struct TorusSupResult {
    /// |p| at `argmax`; a certified lower bound for the sup.
    double value = 0.0;
    PolydiscPoint argmax;
    /// Phase of every variable 1..nvars (index 0 unused).
    std::vector<double> phases;
    /// Relative change of the best value over the last refinement sweep.
    double last_relative_change = 0.0;
    bool converged = true;
    u64 grid_points = 0;
    std::uint32_t searched_dims = 0;
};

inline constexpr double torus_convergence_tolerance = 1e-6;

/// Lower-bound estimate of sup |p(r_1 w_1, ..., r_M w_M)| over the torus.
///
/// Terms carrying a variable that occurs in no other term have a free phase,
/// so they add their modulus to the sup of the remaining terms; the search
/// runs only over the variables of those remaining terms. The search is a
/// uniform phase grid (ties go to the first row-major index), then
/// coordinate ascent from the best grid points and from seeded random
/// starts. Results do not depend on `parallel`.
TorusSupResult torus_sup(const SparseMultiPoly& p, std::span<const double> radii, const TorusSupOptions& options = {});

/// Equal radius r in every variable.
TorusSupResult torus_sup(const SparseMultiPoly& p, double radius, const TorusSupOptions& options = {});

} // namespace dseries
