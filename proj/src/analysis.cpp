#include "dseries/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dseries/bohr.hpp"
#include "dseries/error.hpp"

namespace dseries {

FloatComplex partial_sum(const Series& f, FloatComplex s)
{
    FloatComplex total{};
    for (const auto& [n, a] : f.coeffs()) {
        total += a.as_float() * std::exp(-s * std::log(static_cast<double>(n)));
    }
    return total;
}

namespace {

// a_n n^{-sigma} and log n for the terms of f.
struct LineTerms {
    std::vector<FloatComplex> coeff;
    std::vector<double> log_n;

    LineTerms(const Series& f, double sigma)
    {
        for (const auto& [n, a] : f.coeffs()) {
            const double ln = std::log(static_cast<double>(n));
            coeff.push_back(a.as_float() * std::exp(-sigma * ln));
            log_n.push_back(ln);
        }
    }

    double abs_at(double t) const
    {
        FloatComplex total{};
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            total += coeff[k] * std::polar(1.0, -t * log_n[k]);
        }
        return std::abs(total);
    }
};

} // namespace

LineSupReport line_sup(const Series& f, double sigma, double T, u64 samples, const LineSupOptions& options)
{
    if (samples < 2) {
        fail(Errc::invalid_argument, "line_sup needs at least 2 samples");
    }
    if (!(T > 0.0) || !(sigma >= 0.0)) {
        fail(Errc::invalid_argument, "line_sup needs T > 0 and sigma >= 0");
    }
    LineSupReport report;
    report.sigma = sigma;
    report.T = T;
    report.samples = samples;

    const LineTerms terms(f, sigma);
    const double h = 2.0 * T / static_cast<double>(samples - 1);
    auto t_at = [&](u64 k) { return -T + h * static_cast<double>(k); };

    std::vector<double> values(samples);
    const unsigned workers = std::max(1u, options.parallel);
    auto fill = [&](u64 lo, u64 hi) {
        for (u64 k = lo; k < hi; ++k) {
            values[k] = terms.abs_at(t_at(k));
        }
    };
    if (workers == 1) {
        fill(0, samples);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(fill, samples * w / workers, samples * (w + 1) / workers);
        }
    }

    u64 best_k = 0;
    for (u64 k = 1; k < samples; ++k) {
        if (values[k] > values[best_k]) {
            best_k = k;
        }
    }
    report.sup_estimate = values[best_k];
    report.argmax_t = t_at(best_k);
    if (!options.refine) {
        return report;
    }

    // Highest grid local maxima, ties to the smaller index.
    std::vector<u64> peaks;
    for (u64 k = 0; k < samples; ++k) {
        const bool left = k == 0 || values[k] >= values[k - 1];
        const bool right = k + 1 == samples || values[k] >= values[k + 1];
        if (left && right) {
            peaks.push_back(k);
        }
    }
    const std::size_t keep = std::min<std::size_t>(peaks.size(), std::max<std::uint32_t>(1, options.refine_candidates));
    std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(), [&](u64 a, u64 b) {
        return values[a] > values[b] || (values[a] == values[b] && a < b);
    });
    peaks.resize(keep);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (u64 k : peaks) {
        double a = std::max(-T, t_at(k) - h);
        double c = std::min(T, t_at(k) + h);
        double x1 = c - inv_phi * (c - a);
        double x2 = a + inv_phi * (c - a);
        double g1 = terms.abs_at(x1);
        double g2 = terms.abs_at(x2);
        for (int it = 0; it < 100 && c - a > 1e-12; ++it) {
            if (g1 < g2) {
                a = x1;
                x1 = x2;
                g1 = g2;
                x2 = a + inv_phi * (c - a);
                g2 = terms.abs_at(x2);
            } else {
                c = x2;
                x2 = x1;
                g2 = g1;
                x1 = c - inv_phi * (c - a);
                g1 = terms.abs_at(x1);
            }
        }
        const double tm = 0.5 * (a + c);
        const double gm = terms.abs_at(tm);
        if (gm > report.sup_estimate) {
            report.sup_estimate = gm;
            report.argmax_t = tm;
        }
    }
    report.refined = true;
    return report;
}

AbscissaEstimate sigma_u_plus_estimate(const Series& f, const PrimeTable& table, const SupBackend& backend)
{
    if (f.window() < 2) {
        fail(Errc::invalid_argument, "abscissa estimate needs window >= 2");
    }
    // The partial sum only changes where a stored coefficient enters, so the
    // cuts 2..window split into runs with a constant sup. Within a run
    // log(sup)/log(cut) is monotone, so its ends carry the maximum.
    std::vector<u64> starts{2};
    for (const auto& [n, a] : f.coeffs()) {
        if (n > 2) {
            starts.push_back(n);
        }
    }
    AbscissaEstimate estimate;
    auto consider = [&](double sup, u64 cut) {
        const double ratio = std::log(sup) / std::log(static_cast<double>(cut));
        if (ratio > estimate.unclamped) {
            estimate.unclamped = ratio;
            estimate.argmax_window = cut;
        }
    };
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const u64 first = starts[k];
        const u64 last = (k + 1 < starts.size()) ? starts[k + 1] - 1 : f.window();
        const Series partial = f.truncated(first);
        if (partial.is_zero()) {
            continue;
        }
        double sup = 0.0;
        if (backend.kind == SupBackend::Kind::torus) {
            sup = torus_sup(bohr_lift(partial, table), 1.0, backend.torus).value;
        } else {
            sup = line_sup(partial, 0.0, backend.T, backend.samples, backend.line).sup_estimate;
        }
        if (sup <= 0.0) {
            continue;
        }
        consider(sup, first);
        if (last != first) {
            consider(sup, last);
        }
    }
    estimate.value = std::max(0.0, estimate.unclamped);
    return estimate;
}

double seminorm_Pr(const Series& f, double r, const PrimeTable& table, const TorusSupOptions& options)
{
    return torus_sup(bohr_lift(f, table), r, options).value;
}

SeminormProfile seminorm_profile(const Series& f, std::span<const double> r_grid, const PrimeTable& table,
                                 const TorusSupOptions& options)
{
    SeminormProfile profile;
    const SparseMultiPoly lifted = bohr_lift(f, table);
    for (double r : r_grid) {
        profile.r_grid.push_back(r);
        profile.values.push_back(torus_sup(lifted, r, options).value);
    }
    return profile;
}

ConvexityReport convexity_check(const SeminormProfile& profile, double tolerance)
{
    const auto& r = profile.r_grid;
    const auto& v = profile.values;
    if (r.size() != v.size() || r.size() < 3) {
        fail(Errc::invalid_argument, "convexity check needs at least 3 matching grid points");
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || (i > 0 && !(r[i] > r[i - 1]))) {
            fail(Errc::invalid_argument, "r grid must be positive and strictly increasing");
        }
        if (!(v[i] > 0.0)) {
            fail(Errc::invalid_argument, "seminorm values must be positive for a log profile");
        }
    }
    ConvexityReport report;
    report.tolerance = tolerance;
    std::vector<double> x(r.size());
    std::vector<double> y(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        x[i] = std::log(r[i]);
        y[i] = std::log(v[i]);
    }
    report.pass = true;
    report.monotone = true;
    report.constant = true;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double d = y[i + 1] - y[i];
        report.first_differences.push_back(d);
        report.monotone = report.monotone && d >= -tolerance;
    }
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        const double chord = ((x[i + 1] - x[i]) * y[i - 1] + (x[i] - x[i - 1]) * y[i + 1]) / (x[i + 1] - x[i - 1]);
        const double defect = chord - y[i];
        report.defects.push_back(defect);
        report.pass = report.pass && defect >= -tolerance;
    }
    for (double yi : y) {
        report.constant = report.constant && std::abs(yi - y[0]) <= tolerance;
    }
    report.pass = report.pass && report.monotone;
    return report;
}

PerronResult perron_recover(const LineEvaluator& f, u64 n, double kappa, double R, u64 steps)
{
    if (!(kappa > 0.0) || !(R > 0.0) || steps < 1 || n < 1) {
        fail(Errc::invalid_argument, "Perron quadrature needs kappa > 0, R > 0, steps >= 1 and n >= 1");
    }
    const double log_n = std::log(static_cast<double>(n));
    const double h = 2.0 * R / static_cast<double>(steps);
    FloatComplex total{};
    for (u64 k = 0; k <= steps; ++k) {
        const double t = -R + h * static_cast<double>(k);
        const FloatComplex s(kappa, t);
        const FloatComplex value = f(s) * std::exp(s * log_n);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            fail(Errc::numeric_failure, "non-finite integrand in Perron quadrature");
        }
        total += (k == 0 || k == steps) ? 0.5 * value : value;
    }
    return {total * h / (2.0 * R), R, steps, h};
}

PerronResult perron_recover(const Series& f, u64 n, double kappa, double R, u64 steps)
{
    return perron_recover([&](FloatComplex s) { return partial_sum(f, s); }, n, kappa, R, steps);
}

double perron_error_bound(const Series& f, u64 n, double kappa, double R, u64 steps)
{
    const double h = 2.0 * R / static_cast<double>(steps);
    double bound = 0.0;
    double mass = 0.0;
    for (const auto& [m, a] : f.coeffs()) {
        const double omega = std::log(static_cast<double>(n) / static_cast<double>(m));
        const double weight = a.abs() * std::exp(kappa * omega);
        mass += weight;
        if (m == n) {
            continue;
        }
        bound += weight * (std::min(1.0, 1.0 / (R * std::abs(omega))) + h * h * omega * omega / 12.0);
    }
    // Rounding in the accumulation of steps + 1 terms.
    bound += static_cast<double>(steps + 1) * 4.0 * std::numeric_limits<double>::epsilon() * mass;
    return bound;
}

} // namespace dseries
