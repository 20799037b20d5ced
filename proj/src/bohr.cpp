#include "dseries/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dseries/error.hpp"

namespace dseries {

FloatComplex PolydiscPoint::operator[](std::uint32_t index) const
{
    auto it = coords_.find(index);
    return it == coords_.end() ? FloatComplex{} : it->second;
}

double PolydiscPoint::max_modulus() const
{
    double m = 0.0;
    for (const auto& [i, z] : coords_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

SparseMultiPoly bohr_lift(const Series& f, const PrimeTable& table)
{
    if (f.window() > table.bound()) {
        fail(Errc::table_too_small, "series window " + std::to_string(f.window()) + " exceeds the sieve bound");
    }
    const auto nvars = static_cast<std::uint32_t>(table.prime_pi(f.window()));
    SparseMultiPoly::Map terms;
    for (const auto& [n, a] : f.coeffs()) {
        terms.emplace(table.factor(n), a);
    }
    return SparseMultiPoly(nvars, f.mode(), std::move(terms));
}

Series bohr_drop(const SparseMultiPoly& p, const PrimeTable& table, std::optional<u64> window)
{
    Series::Map coeffs;
    u64 largest = 1;
    for (const auto& [m, a] : p.terms()) {
        u64 n = 0;
        try {
            n = table.value(m, table.bound());
        } catch (const Error&) {
            fail(Errc::overflow_window, "monomial integer exceeds the sieve bound " + std::to_string(table.bound()));
        }
        largest = std::max(largest, n);
        coeffs.emplace(n, a);
    }
    return Series(window.value_or(largest), p.mode(), std::move(coeffs));
}

namespace {

constexpr double modulus_slack = 1e-12;

} // namespace

FloatComplex poly_eval(const SparseMultiPoly& p, const PolydiscPoint& z, bool allow_outside)
{
    if (!allow_outside && z.max_modulus() > 1.0 + modulus_slack) {
        fail(Errc::invalid_argument, "evaluation point lies outside the closed unit polydisc");
    }
    // Powers of each coordinate are cached up to the degree they are needed.
    std::map<std::uint32_t, std::vector<FloatComplex>> powers;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& e : m.entries()) {
            auto& pw = powers[e.index];
            if (pw.empty()) {
                pw.push_back(1.0);
            }
            const FloatComplex x = z[e.index];
            while (pw.size() <= e.exponent) {
                pw.push_back(pw.back() * x);
            }
        }
    }
    FloatComplex total{};
    for (const auto& [m, c] : p.terms()) {
        FloatComplex term = c.as_float();
        for (const auto& e : m.entries()) {
            term *= powers[e.index][e.exponent];
        }
        total += term;
    }
    return total;
}

PolydiscPoint eval_c(FloatComplex s, std::uint32_t nvars, const PrimeTable& table)
{
    PolydiscPoint z;
    for (std::uint32_t i = 1; i <= nvars; ++i) {
        z.set(i, std::exp(-s * std::log(static_cast<double>(table.prime(i)))));
    }
    return z;
}

FloatComplex cauchy_coefficient(const PolydiscEvaluator& f, const Monomial& target, std::uint32_t grid_per_var,
                                std::span<const double> radii, u64 budget)
{
    const auto k = static_cast<std::uint32_t>(radii.size());
    if (grid_per_var < 1) {
        fail(Errc::invalid_argument, "grid must have at least one point per variable");
    }
    if (target.max_index() > k) {
        fail(Errc::invalid_argument, "target monomial uses a variable past the integration torus");
    }
    for (double r : radii) {
        if (!(r >= 0.0) || r > 1.0) {
            fail(Errc::invalid_argument, "Cauchy radii must lie in [0, 1]");
        }
    }
    for (const auto& e : target.entries()) {
        if (radii[e.index - 1] == 0.0) {
            fail(Errc::invalid_argument, "target monomial uses a variable held at 0");
        }
    }
    // A variable at radius 0 is held at the origin instead of integrated.
    std::vector<std::uint32_t> sizes(k);
    u64 points = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        sizes[i] = radii[i] > 0.0 ? grid_per_var : 1;
        if (!checked_mul(points, sizes[i], budget, points)) {
            fail(Errc::budget_exceeded, "Cauchy grid exceeds the evaluation budget");
        }
    }

    std::vector<FloatComplex> roots(grid_per_var);
    for (std::uint32_t j = 0; j < grid_per_var; ++j) {
        roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / grid_per_var);
    }
    std::vector<std::uint32_t> alpha(k);
    double r_alpha = 1.0;
    for (const auto& e : target.entries()) {
        alpha[e.index - 1] = e.exponent;
        r_alpha *= std::pow(radii[e.index - 1], e.exponent);
    }

    std::vector<std::uint32_t> digits(k, 0);
    FloatComplex total{};
    for (u64 idx = 0; idx < points; ++idx) {
        PolydiscPoint z;
        std::uint64_t phase = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            z.set(i + 1, radii[i] * roots[digits[i]]);
            phase += static_cast<std::uint64_t>(alpha[i]) * digits[i];
        }
        const FloatComplex value = f(z);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            fail(Errc::numeric_failure, "evaluator returned a non-finite value");
        }
        total += value * std::conj(roots[phase % grid_per_var]);
        for (std::uint32_t i = k; i-- > 0;) {
            if (++digits[i] < sizes[i]) {
                break;
            }
            digits[i] = 0;
        }
    }
    return total / (static_cast<double>(points) * r_alpha);
}

FloatComplex cauchy_coefficient(const Series& f, u64 n, std::uint32_t grid_per_var, double radius,
                                const PrimeTable& table, u64 budget)
{
    const SparseMultiPoly lifted = bohr_lift(f, table);
    const Monomial target = table.factor(n);
    const std::uint32_t k = target.max_index();
    if (!(radius > 0.0)) {
        fail(Errc::invalid_argument, "Cauchy radius must be positive");
    }
    // Variables absent from x^alpha are held at 0: that keeps the coefficient
    // of x^alpha and shrinks the grid to the variables of n.
    std::vector<double> radii(k, 0.0);
    for (const auto& e : target.entries()) {
        if (lifted.degree_in(e.index) >= grid_per_var) {
            fail(Errc::invalid_argument, "grid of " + std::to_string(grid_per_var) +
                                             " points does not exceed the degree in x_" + std::to_string(e.index));
        }
        radii[e.index - 1] = radius;
    }
    return cauchy_coefficient([&](const PolydiscPoint& z) { return poly_eval(lifted, z, true); }, target,
                              grid_per_var, radii, budget);
}

} // namespace dseries
