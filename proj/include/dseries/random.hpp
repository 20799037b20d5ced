#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dseries/permutation.hpp"
#include "dseries/series.hpp"

namespace dseries {

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, so they are avoided here).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    /// Uniform double in [0, 1).
    double unit();
    double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit(); }
    bool coin(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

struct RandomSeriesSpec {
    u64 window = 64;
    /// Probability that each index in the window carries a coefficient.
    double density = 0.1;
    /// Numerators drawn from [-max_num, max_num], denominators from [1, max_den].
    std::int64_t max_num = 9;
    std::int64_t max_den = 4;
    bool complex = true;
    ScalarMode mode = ScalarMode::exact;
};

Scalar random_scalar(Rng& rng, const RandomSeriesSpec& spec);
Series random_series(Rng& rng, const RandomSeriesSpec& spec);

/// Random series with a_1 != 0.
Series random_unit(Rng& rng, const RandomSeriesSpec& spec);

/// Integers whose prime indices are all <= max_index and with at most
/// max_omega prime factors, sorted. Any permutation of 1..max_index maps this
/// set onto itself.
std::vector<u64> smooth_support(std::uint32_t max_index, std::uint32_t max_omega, const PrimeTable& table);

/// Random series on the given window whose coefficients may only sit on
/// `support`; each point is kept with probability spec.density.
Series random_series_on(Rng& rng, std::span<const u64> support, u64 window, const RandomSeriesSpec& spec);

/// Uniform random permutation of a random subset of 1..max_index with
/// `moved` points (clamped to max_index).
Permutation random_permutation(Rng& rng, std::uint32_t max_index, std::uint32_t moved);

} // namespace dseries
