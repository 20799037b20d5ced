#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "dseries/primes.hpp"
#include "dseries/scalar.hpp"

namespace dseries {

/// Dirichlet series sum a_n n^{-s} truncated to the window 1 <= n <= N.
///
/// Only nonzero coefficients are stored. All coefficients share one scalar
/// mode. Binary operations truncate to the smaller of the two windows, which
/// is exactly where the untruncated result is determined by the inputs.
class Series {
public:
    using Map = std::map<u64, Scalar>;

    Series(u64 window, ScalarMode mode);
    /// Zeros are pruned; indices outside [1, window] or foreign modes throw.
    Series(u64 window, ScalarMode mode, Map coeffs);

    static Series one(u64 window, ScalarMode mode = ScalarMode::exact);
    /// a_n = 1 for every n <= window.
    static Series zeta(u64 window, ScalarMode mode = ScalarMode::exact);
    static Series monomial(u64 n, const Scalar& c, u64 window);

    u64 window() const noexcept { return window_; }
    ScalarMode mode() const noexcept { return mode_; }
    const Map& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Coefficient at n (zero when not stored). n must lie in the window.
    Scalar coeff(u64 n) const;

    /// Largest stored index, 0 for the zero series.
    u64 max_index() const noexcept { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    void set(u64 n, Scalar c);

    Series truncated(u64 window) const;
    Series with_window(u64 window) const;
    Series to_mode(ScalarMode mode) const;

    /// Same window, same mode, same coefficients.
    bool identical(const Series& other) const;

    /// Equality on the common window min(N1, N2).
    friend bool operator==(const Series& a, const Series& b);

private:
    u64 window_;
    ScalarMode mode_;
    Map coeffs_;
};

Series add(const Series& f, const Series& g);
Series sub(const Series& f, const Series& g);
Series scale(const Scalar& c, const Series& f);

/// Dirichlet convolution c_n = sum_{de = n} a_d b_e on the common window.
Series mul(const Series& f, const Series& g);

inline constexpr double default_invert_tolerance = 1e-12;

/// Inverse in the unit group; requires a_1 != 0 (|a_1| > tolerance in float mode).
Series invert(const Series& f, double tolerance = default_invert_tolerance);

/// Multiplies a_n by r^{Omega(n)}.
Series dilate(const Series& f, const Scalar& r, const PrimeTable& table);

double l1_norm(const Series& f);

/// Exact sum of moduli when every modulus is rational (e.g. real or
/// Gaussian-Pythagorean coefficients); nullopt otherwise or in float mode.
std::optional<Rational> l1_norm_exact(const Series& f);

inline Series operator+(const Series& f, const Series& g) { return add(f, g); }
inline Series operator-(const Series& f, const Series& g) { return sub(f, g); }
inline Series operator*(const Series& f, const Series& g) { return mul(f, g); }

} // namespace dseries
