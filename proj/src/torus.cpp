#include "dseries/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "dseries/error.hpp"

namespace dseries {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Factor {
    std::uint32_t slot;
    std::uint32_t exponent;
};

struct Term {
    FloatComplex coeff;
    std::vector<Factor> factors;
};

struct Candidate {
    double value;
    u64 index;
};

bool better(const Candidate& a, const Candidate& b)
{
    return a.value > b.value || (a.value == b.value && a.index < b.index);
}

void keep_top(std::vector<Candidate>& top, Candidate c, std::size_t k)
{
    if (top.size() == k && !better(c, top.back())) {
        return;
    }
    top.insert(std::upper_bound(top.begin(), top.end(), c, better), c);
    if (top.size() > k) {
        top.pop_back();
    }
}

// Sum of terms over the searched variables only.
class CorePoly {
public:
    CorePoly(std::vector<Term> terms, std::uint32_t dims) : terms_(std::move(terms)), dims_(dims)
    {
        degree_.assign(dims_, 0);
        for (const auto& t : terms_) {
            for (const auto& f : t.factors) {
                degree_[f.slot] = std::max(degree_[f.slot], f.exponent);
            }
        }
    }

    std::uint32_t dims() const noexcept { return dims_; }

    double abs_at(const std::vector<double>& theta) const
    {
        FloatComplex total{};
        for (const auto& t : terms_) {
            double phase = 0.0;
            for (const auto& f : t.factors) {
                phase += f.exponent * theta[f.slot];
            }
            total += t.coeff * std::polar(1.0, phase);
        }
        return std::abs(total);
    }

    // Values on the grid slice [lo, hi) of the row-major G^d phase grid.
    void scan(std::uint32_t grid, u64 lo, u64 hi, std::size_t k, std::vector<Candidate>& top) const
    {
        std::vector<FloatComplex> roots(grid);
        for (std::uint32_t j = 0; j < grid; ++j) {
            roots[j] = std::polar(1.0, two_pi * j / grid);
        }
        std::vector<std::uint32_t> digits(dims_);
        u64 rest = lo;
        for (std::uint32_t i = dims_; i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(rest % grid);
            rest /= grid;
        }
        for (u64 idx = lo; idx < hi; ++idx) {
            FloatComplex total{};
            for (const auto& t : terms_) {
                u64 phase = 0;
                for (const auto& f : t.factors) {
                    phase += static_cast<u64>(f.exponent) * digits[f.slot];
                }
                total += t.coeff * roots[phase % grid];
            }
            keep_top(top, {std::abs(total), idx}, k);
            for (std::uint32_t i = dims_; i-- > 0;) {
                if (++digits[i] < grid) {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    // Coordinate ascent; returns the relative change of the final sweep.
    double ascend(std::vector<double>& theta, double& value, std::uint32_t max_sweeps) const
    {
        value = abs_at(theta);
        double change = 0.0;
        for (std::uint32_t sweep = 0; sweep < max_sweeps; ++sweep) {
            const double before = value;
            for (std::uint32_t j = 0; j < dims_; ++j) {
                maximize_coordinate(theta, j);
            }
            value = abs_at(theta);
            change = (value - before) / std::max(value, 1e-300);
            if (change < 1e-15) {
                break;
            }
        }
        return change;
    }

private:
    void maximize_coordinate(std::vector<double>& theta, std::uint32_t j) const
    {
        // p restricted to coordinate j is sum_e B_e exp(i e theta_j).
        std::vector<FloatComplex> b(degree_[j] + 1);
        for (const auto& t : terms_) {
            double phase = 0.0;
            std::uint32_t ej = 0;
            for (const auto& f : t.factors) {
                if (f.slot == j) {
                    ej = f.exponent;
                } else {
                    phase += f.exponent * theta[f.slot];
                }
            }
            b[ej] += t.coeff * std::polar(1.0, phase);
        }
        auto g = [&](double x) {
            FloatComplex total{};
            for (std::size_t e = 0; e < b.size(); ++e) {
                total += b[e] * std::polar(1.0, static_cast<double>(e) * x);
            }
            return std::abs(total);
        };

        const std::uint32_t samples = std::max<std::uint32_t>(32, 8 * degree_[j]);
        double best_x = theta[j];
        double best = g(best_x);
        const double current = best;
        for (std::uint32_t s = 0; s < samples; ++s) {
            const double x = two_pi * s / samples;
            const double v = g(x);
            if (v > best) {
                best = v;
                best_x = x;
            }
        }
        // Golden-section search for the maximum inside one sample spacing.
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = best_x - two_pi / samples;
        double c = best_x + two_pi / samples;
        double x1 = c - inv_phi * (c - a);
        double x2 = a + inv_phi * (c - a);
        double g1 = g(x1);
        double g2 = g(x2);
        for (int it = 0; it < 100 && c - a > 1e-13; ++it) {
            if (g1 < g2) {
                a = x1;
                x1 = x2;
                g1 = g2;
                x2 = a + inv_phi * (c - a);
                g2 = g(x2);
            } else {
                c = x2;
                x2 = x1;
                g2 = g1;
                x1 = c - inv_phi * (c - a);
                g1 = g(x1);
            }
        }
        const double xm = 0.5 * (a + c);
        const double gm = g(xm);
        if (gm > best) {
            best = gm;
            best_x = xm;
        }
        if (best > current) {
            theta[j] = std::remainder(best_x, two_pi);
        }
    }

    std::vector<Term> terms_;
    std::uint32_t dims_;
    std::vector<std::uint32_t> degree_;
};

} // namespace

TorusSupResult torus_sup(const SparseMultiPoly& p, std::span<const double> radii, const TorusSupOptions& options)
{
    const std::uint32_t nvars = p.nvars();
    if (radii.size() < nvars) {
        fail(Errc::invalid_argument, "need one radius per variable");
    }
    for (std::uint32_t i = 0; i < nvars; ++i) {
        if (!(radii[i] > 0.0 && radii[i] <= 1.0)) {
            fail(Errc::invalid_argument, "torus radii must lie in (0, 1]");
        }
    }
    if (options.grid_per_var < 1) {
        fail(Errc::invalid_argument, "grid must have at least one point per variable");
    }

    // Fold the radii into the coefficients and count variable occurrences.
    struct RawTerm {
        FloatComplex coeff;
        const Monomial* monomial;
    };
    std::vector<RawTerm> raw;
    std::map<std::uint32_t, std::uint32_t> occurrences;
    for (const auto& [m, c] : p.terms()) {
        FloatComplex coeff = c.as_float();
        for (const auto& e : m.entries()) {
            coeff *= std::pow(radii[e.index - 1], e.exponent);
            ++occurrences[e.index];
        }
        raw.push_back({coeff, &m});
    }

    // A term owning a variable seen nowhere else can be rotated freely.
    std::vector<std::uint32_t> owner_var(raw.size(), 0);
    std::map<std::uint32_t, std::uint32_t> slot_of;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        for (const auto& e : raw[t].monomial->entries()) {
            if (occurrences[e.index] == 1) {
                owner_var[t] = e.index;
                break;
            }
        }
        if (owner_var[t] == 0) {
            for (const auto& e : raw[t].monomial->entries()) {
                slot_of.emplace(e.index, 0);
            }
        }
    }
    std::vector<std::uint32_t> var_of_slot;
    for (auto& [var, slot] : slot_of) {
        slot = static_cast<std::uint32_t>(var_of_slot.size());
        var_of_slot.push_back(var);
    }
    const auto dims = static_cast<std::uint32_t>(var_of_slot.size());

    std::vector<Term> core_terms;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        if (owner_var[t] != 0) {
            continue;
        }
        Term term{raw[t].coeff, {}};
        for (const auto& e : raw[t].monomial->entries()) {
            term.factors.push_back({slot_of.at(e.index), e.exponent});
        }
        core_terms.push_back(std::move(term));
    }
    const CorePoly core(std::move(core_terms), dims);

    TorusSupResult result;
    result.searched_dims = dims;
    std::vector<double> theta(dims, 0.0);

    if (dims > 0) {
        const std::uint32_t grid = options.grid_per_var;
        u64 points = 1;
        for (std::uint32_t i = 0; i < dims; ++i) {
            if (!checked_mul(points, grid, options.budget, points)) {
                fail(Errc::budget_exceeded, std::to_string(dims) + " searched variables at " + std::to_string(grid) +
                                                " phases each exceed the grid budget of " +
                                                std::to_string(options.budget));
            }
        }
        result.grid_points = points;

        const std::size_t k = std::max<std::uint32_t>(1, options.grid_starts);
        const unsigned workers = static_cast<unsigned>(
            std::clamp<u64>(options.parallel == 0 ? 1 : options.parallel, 1, std::max<u64>(1, points)));
        std::vector<std::vector<Candidate>> tops(workers);
        if (workers == 1) {
            core.scan(grid, 0, points, k, tops[0]);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                const u64 lo = points * w / workers;
                const u64 hi = points * (w + 1) / workers;
                pool.emplace_back([&, w, lo, hi] { core.scan(grid, lo, hi, k, tops[w]); });
            }
        }
        std::vector<Candidate> top;
        for (const auto& t : tops) {
            for (const auto& c : t) {
                keep_top(top, c, k);
            }
        }

        std::vector<std::vector<double>> starts;
        for (const auto& c : top) {
            std::vector<double> start(dims);
            u64 rest = c.index;
            for (std::uint32_t i = dims; i-- > 0;) {
                start[i] = two_pi * static_cast<double>(rest % grid) / grid;
                rest /= grid;
            }
            starts.push_back(std::move(start));
        }
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> phase(0.0, two_pi);
        for (std::uint32_t r = 0; r < options.restarts; ++r) {
            std::vector<double> start(dims);
            for (auto& x : start) {
                x = phase(rng);
            }
            starts.push_back(std::move(start));
        }

        double best = -1.0;
        for (auto& start : starts) {
            double value = 0.0;
            const double change = core.ascend(start, value, std::max<std::uint32_t>(1, options.refine_steps));
            if (value > best) {
                best = value;
                theta = start;
                result.last_relative_change = change;
            }
        }
    }

    // Assemble phases for every variable, then turn each free term toward
    // the value of the searched part.
    result.phases.assign(nvars + 1, 0.0);
    for (std::uint32_t s = 0; s < dims; ++s) {
        result.phases[var_of_slot[s]] = theta[s];
    }
    FloatComplex core_value{};
    for (std::size_t t = 0; t < raw.size(); ++t) {
        if (owner_var[t] != 0) {
            continue;
        }
        double phase = 0.0;
        for (const auto& e : raw[t].monomial->entries()) {
            phase += e.exponent * result.phases[e.index];
        }
        core_value += raw[t].coeff * std::polar(1.0, phase);
    }
    double target = std::arg(core_value);
    bool have_target = std::abs(core_value) > 0.0;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        if (owner_var[t] == 0) {
            continue;
        }
        double phase = std::arg(raw[t].coeff);
        std::uint32_t own_exponent = 0;
        for (const auto& e : raw[t].monomial->entries()) {
            if (e.index == owner_var[t]) {
                own_exponent = e.exponent;
            } else {
                phase += e.exponent * result.phases[e.index];
            }
        }
        if (!have_target) {
            target = phase;
            have_target = true;
        }
        result.phases[owner_var[t]] = std::remainder((target - phase) / own_exponent, two_pi);
    }

    for (std::uint32_t i = 1; i <= nvars; ++i) {
        result.argmax.set(i, std::polar(radii[i - 1], result.phases[i]));
    }
    result.value = std::abs(poly_eval(p, result.argmax));
    result.converged = result.last_relative_change < torus_convergence_tolerance;
    return result;
}

TorusSupResult torus_sup(const SparseMultiPoly& p, double radius, const TorusSupOptions& options)
{
    const std::vector<double> radii(p.nvars(), radius);
    if (!(radius > 0.0 && radius <= 1.0)) {
        fail(Errc::invalid_argument, "torus radius must lie in (0, 1]");
    }
    return torus_sup(p, radii, options);
}

} // namespace dseries
