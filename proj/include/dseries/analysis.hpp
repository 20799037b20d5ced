#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dseries/primes.hpp"
#include "dseries/series.hpp"
#include "dseries/torus.hpp"

namespace dseries {

/// sum_{n <= window} a_n n^{-s}, each term as a_n exp(-s log n).
FloatComplex partial_sum(const Series& f, FloatComplex s);

struct LineSupReport {
    double sigma = 0.0;
    double T = 0.0;
    u64 samples = 0;
    double sup_estimate = 0.0;
    double argmax_t = 0.0;
    bool refined = false;
};

struct LineSupOptions {
    bool refine = true;
    /// Grid local maxima handed to golden-section refinement.
    std::uint32_t refine_candidates = 32;
    unsigned parallel = 1;
};

/// max |partial_sum(f, sigma + it)| over the uniform grid of `samples`
/// points in [-T, T], optionally refined around the best grid maxima.
LineSupReport line_sup(const Series& f, double sigma, double T, u64 samples, const LineSupOptions& options = {});

struct SupBackend {
    enum class Kind { torus, line };
    Kind kind = Kind::torus;
    TorusSupOptions torus;
    double T = 1e4;
    u64 samples = 200001;
    LineSupOptions line;
};

struct AbscissaEstimate {
    /// max(0, unclamped).
    double value = 0.0;
    /// max over 2 <= N' <= window of log(sup_t |sum_{n<=N'} a_n n^{-it}|) / log N';
    /// -inf when every partial sum vanishes.
    double unclamped = -std::numeric_limits<double>::infinity();
    u64 argmax_window = 0;
};

/// Window-limited surrogate for the positive part of the abscissa of uniform
/// convergence. It is an estimator on the stored window, not the limsup.
AbscissaEstimate sigma_u_plus_estimate(const Series& f, const PrimeTable& table, const SupBackend& backend = {});

/// P_r(f) estimated as the torus sup of the lift at radius r.
double seminorm_Pr(const Series& f, double r, const PrimeTable& table, const TorusSupOptions& options = {});

struct SeminormProfile {
    std::vector<double> r_grid;
    std::vector<double> values;
    std::string method = "torus";
};

SeminormProfile seminorm_profile(const Series& f, std::span<const double> r_grid, const PrimeTable& table,
                                 const TorusSupOptions& options = {});

inline constexpr double default_convexity_tolerance = 1e-6;

struct ConvexityReport {
    bool pass = false;
    bool monotone = false;
    bool constant = false;
    double tolerance = default_convexity_tolerance;
    /// Chord-minus-value of log P against log r at each interior point.
    std::vector<double> defects;
    /// Consecutive differences of log P.
    std::vector<double> first_differences;
};

/// Convexity and monotonicity of log P_r in log r. Passes iff every defect
/// and every first difference is >= -tolerance.
ConvexityReport convexity_check(const SeminormProfile& profile, double tolerance = default_convexity_tolerance);

struct PerronResult {
    FloatComplex value;
    double R = 0.0;
    u64 steps = 0;
    double step = 0.0;
};

using LineEvaluator = std::function<FloatComplex(FloatComplex)>;

/// (1/2R) int_{-R}^{R} f(kappa + it) n^{kappa + it} dt by the composite
/// trapezoid rule with `steps` intervals.
PerronResult perron_recover(const LineEvaluator& f, u64 n, double kappa, double R, u64 steps);
PerronResult perron_recover(const Series& f, u64 n, double kappa, double R, u64 steps);

/// Bound on |perron_recover(f, ...) - a_n| for a finite series: for every
/// other m, |a_m| (n/m)^kappa times the truncated-integral factor
/// min(1, 1/(R |log(n/m)|)) plus the trapezoid term h^2 log^2(n/m) / 12,
/// plus a rounding allowance.
double perron_error_bound(const Series& f, u64 n, double kappa, double R, u64 steps);

} // namespace dseries
