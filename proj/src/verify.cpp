#include "dseries/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "dseries/analysis.hpp"
#include "dseries/bohr.hpp"
#include "dseries/error.hpp"
#include "dseries/group.hpp"
#include "dseries/torus.hpp"

namespace dseries {

namespace {

const PrimeTable& table()
{
    static const PrimeTable t(u64{1} << 20);
    return t;
}

// ---------------------------------------------------------------- inputs

RandomSeriesSpec exact_spec(u64 window, double density, bool complex = true)
{
    RandomSeriesSpec spec;
    spec.window = window;
    spec.density = density;
    spec.complex = complex;
    return spec;
}

RandomSeriesSpec float_spec(u64 window, double density)
{
    RandomSeriesSpec spec = exact_spec(window, density);
    spec.mode = ScalarMode::floating;
    return spec;
}

Series series_at(const Json& in, const char* key) { return series_from_json(in.at(key)); }

Scalar scalar_at(const Json& in, const char* key, ScalarMode mode) { return scalar_from_json(in.at(key), mode); }

Permutation perm_at(const Json& in, const char* key) { return Permutation::parse(in.at(key).get<std::string>()); }

std::vector<std::uint32_t> indices_at(const Json& in, const char* key)
{
    auto v = in.at(key).get<std::vector<std::uint32_t>>();
    std::sort(v.begin(), v.end());
    return v;
}

Json rational_scalar(Rng& rng)
{
    RandomSeriesSpec spec;
    Scalar r = random_scalar(rng, spec);
    while (r.is_zero()) {
        r = random_scalar(rng, spec);
    }
    return scalar_to_json(r);
}

// Finite groups on at most 8 indices used by the projection suites.
const std::vector<std::vector<std::string>>& finite_groups()
{
    static const std::vector<std::vector<std::string>> groups{
        {"(1 2)"},
        {"(1 2)", "(1 2 3)"},
        {"(1 2 3 4 5)"},
        {"(1 2)", "(3 4)"},
        {"(1 2 3)", "(4 5)"},
        {"(1 2)", "(1 2 3)", "(4 5)"},
        {"(1 2 3 4)"},
        {"(1 2)(3 4)", "(1 3)(2 4)"},
        {"(1 2 3 4 5 6 7 8)"},
        {"(1 2)", "(1 2 3 4)"},
    };
    return groups;
}

Json random_group(Rng& rng)
{
    const auto& groups = finite_groups();
    return Json{{"generators", groups[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(groups.size()) - 1))]}};
}

// Supports on the first 8 primes with at most `omega` factors are mapped onto
// themselves by every group above, so windows never cut an orbit.
constexpr std::uint32_t group_indices = 8;

u64 stable_window(std::uint32_t omega)
{
    u64 w = 1;
    for (std::uint32_t k = 0; k < omega; ++k) {
        w *= table().prime(group_indices);
    }
    return w;
}

Series stable_series(Rng& rng, std::uint32_t omega, u64 window, const RandomSeriesSpec& spec)
{
    static const auto support2 = smooth_support(group_indices, 2, table());
    static const auto support3 = smooth_support(group_indices, 3, table());
    const auto& support = omega <= 2 ? support2 : support3;
    std::vector<u64> cut;
    for (u64 n : support) {
        if (table().factor_smooth(n).omega() <= omega) {
            cut.push_back(n);
        }
    }
    return random_series_on(rng, cut, window, spec);
}

// Keeps coefficients with Omega(n) <= omega: the quotient by the ideal of
// higher Omega, which every group action and the product respect.
Series omega_truncate(const Series& f, std::uint32_t omega)
{
    Series out(f.window(), f.mode());
    for (const auto& [n, a] : f.coeffs()) {
        if (table().factor_smooth(n).omega() <= omega) {
            out.set(n, a);
        }
    }
    return out;
}

// ---------------------------------------------------------------- outcomes

PropertyOutcome same_series(const Series& expected, const Series& got)
{
    return {expected.identical(got), series_to_json(expected), series_to_json(got)};
}

PropertyOutcome at_most(double got, double limit, double tol)
{
    return {got <= limit + tol, Json{{"at_most", limit}, {"tolerance", tol}}, got};
}

PropertyOutcome close(FloatComplex got, FloatComplex want, double tol)
{
    return {std::abs(got - want) <= tol, Json{{"value", Json::array({want.real(), want.imag()})}, {"tolerance", tol}},
            Json::array({got.real(), got.imag()})};
}

PropertyOutcome every(std::vector<PropertyOutcome> parts)
{
    PropertyOutcome out;
    out.expected = Json::array();
    out.got = Json::array();
    for (auto& p : parts) {
        out.ok = out.ok && p.ok;
        out.expected.push_back(std::move(p.expected));
        out.got.push_back(std::move(p.got));
    }
    return out;
}

std::string status_name(InvarianceReport::Status s)
{
    switch (s) {
    case InvarianceReport::Status::invariant:
        return "invariant";
    case InvarianceReport::Status::violated:
        return "violated";
    case InvarianceReport::Status::inconclusive:
        return "inconclusive";
    }
    return "?";
}

PropertyOutcome invariant_outcome(const InvarianceReport& report)
{
    Json got{{"status", status_name(report.status)}};
    if (report.status == InvarianceReport::Status::violated) {
        got["witness"] = report.witness;
        got["generator"] = report.generator;
    }
    return {report.status == InvarianceReport::Status::invariant, "invariant", got};
}

// ---------------------------------------------------------------- oracles

// Triangular solve of sum_{d | k} a_d b_{k/d} = [k == 1] over dense storage.
Series dense_inverse(const Series& f)
{
    const u64 n = f.window();
    std::vector<ExactComplex> a(n + 1);
    std::vector<ExactComplex> b(n + 1);
    for (const auto& [k, c] : f.coeffs()) {
        a[k] = c.exact();
    }
    const ExactComplex inv = ExactComplex(1) / a[1];
    for (u64 k = 1; k <= n; ++k) {
        ExactComplex rhs = k == 1 ? ExactComplex(1) : ExactComplex(0);
        for (u64 d = 2; d <= k; ++d) {
            if (k % d == 0 && !a[d].is_zero()) {
                rhs -= a[d] * b[k / d];
            }
        }
        b[k] = rhs * inv;
    }
    Series out(n, ScalarMode::exact);
    for (u64 k = 1; k <= n; ++k) {
        out.set(k, Scalar(b[k]));
    }
    return out;
}

std::vector<int> mobius_sieve(u64 n)
{
    std::vector<int> mu(n + 1, 1);
    std::vector<bool> composite(n + 1, false);
    for (u64 p = 2; p <= n; ++p) {
        if (composite[p]) {
            continue;
        }
        for (u64 k = 2 * p; k <= n; k += p) {
            composite[k] = true;
        }
        for (u64 k = p; k <= n; k += p) {
            mu[k] = -mu[k];
        }
        for (u64 k = p * p; k <= n; k += p * p) {
            mu[k] = 0;
        }
    }
    return mu;
}

u64 partitions_at_most(unsigned d, unsigned k)
{
    std::vector<std::vector<u64>> p(k + 1, std::vector<u64>(d + 1, 0));
    for (unsigned j = 0; j <= k; ++j) {
        p[j][0] = 1;
    }
    for (unsigned j = 1; j <= k; ++j) {
        for (unsigned m = 1; m <= d; ++m) {
            p[j][m] = p[j - 1][m] + (m >= j ? p[j][m - j] : 0);
        }
    }
    return p[k][d];
}

// Orbits of degree-d exponent vectors in k variables under all coordinate
// permutations: a vector's orbit is determined by its sorted entries.
u64 sorted_vector_orbits(unsigned k, unsigned d)
{
    std::set<std::vector<unsigned>> keys;
    std::vector<unsigned> cur(k, 0);
    auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
        if (pos + 1 == k) {
            cur[pos] = left;
            auto key = cur;
            std::sort(key.begin(), key.end());
            keys.insert(key);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, d);
    return keys.size();
}

PermutationGroup symmetric_group(unsigned k)
{
    std::vector<Permutation> gens;
    if (k >= 2) {
        gens.push_back(Permutation::parse("(1 2)"));
        std::string cycle = "(";
        for (unsigned i = 1; i <= k; ++i) {
            cycle += std::to_string(i) + (i < k ? " " : ")");
        }
        gens.push_back(Permutation::parse(cycle));
    }
    return PermutationGroup(std::move(gens));
}

std::vector<double> profile_grid()
{
    std::vector<double> grid;
    for (int i = 1; i <= 17; ++i) {
        grid.push_back(i / 18.0);
    }
    return grid;
}

// ---------------------------------------------------------------- suites

Suite primes_suite()
{
    Suite s{"primes", "factorization, Omega and pi(x) against trial division", 200, {}};
    s.properties.push_back({"multiply-back",
                            [](Rng& rng) { return Json{{"n", rng.uniform(1, 1000000)}}; },
                            [](const Json& in) {
                                const u64 n = in.at("n").get<u64>();
                                return PropertyOutcome{table().value(table().factor(n)) == n, n,
                                                       table().value(table().factor(n))};
                            }});
    s.properties.push_back({"omega-additive",
                            [](Rng& rng) { return Json{{"m", rng.uniform(1, 1000)}, {"n", rng.uniform(1, 1000)}}; },
                            [](const Json& in) {
                                const u64 m = in.at("m").get<u64>();
                                const u64 n = in.at("n").get<u64>();
                                const auto lhs = table().omega(m * n);
                                const auto rhs = table().omega(m) + table().omega(n);
                                return PropertyOutcome{lhs == rhs, rhs, lhs};
                            }});
    s.properties.push_back({"prime-count",
                            [](Rng& rng) { return Json{{"x", rng.uniform(1, 10000)}}; },
                            [](const Json& in) {
                                const u64 x = in.at("x").get<u64>();
                                u64 count = 0;
                                for (u64 n = 2; n <= x; ++n) {
                                    bool prime = true;
                                    for (u64 d = 2; d * d <= n && prime; ++d) {
                                        prime = n % d != 0;
                                    }
                                    count += prime ? 1 : 0;
                                }
                                return PropertyOutcome{table().prime_pi(x) == count, count, table().prime_pi(x)};
                            }});
    return s;
}

Json three_series(Rng& rng)
{
    const u64 window = static_cast<u64>(rng.uniform(1, 512));
    const double density = rng.uniform_real(0.01, 0.1);
    const auto spec = exact_spec(window, density);
    return Json{{"f", series_to_json(random_series(rng, spec))},
                {"g", series_to_json(random_series(rng, spec))},
                {"h", series_to_json(random_series(rng, spec))},
                {"r", rational_scalar(rng)}};
}

Suite ring_suite()
{
    Suite s{"ring", "ring laws, dilation endomorphism and l1 submultiplicativity (exact)", 40, {}};
    s.properties.push_back({"commutative", three_series, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                return same_series(f * g, g * f);
                            }});
    s.properties.push_back({"associative", three_series, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const Series h = series_at(in, "h");
                                return same_series((f * g) * h, f * (g * h));
                            }});
    s.properties.push_back({"distributive", three_series, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const Series h = series_at(in, "h");
                                return same_series(f * g + f * h, f * (g + h));
                            }});
    s.properties.push_back({"unit", three_series, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                return same_series(f, Series::one(f.window()) * f);
                            }});
    s.properties.push_back({"dilation-endomorphism", three_series, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const Scalar r = scalar_at(in, "r", ScalarMode::exact);
                                return same_series(dilate(f, r, table()) * dilate(g, r, table()),
                                                   dilate(f * g, r, table()));
                            }});
    s.properties.push_back({"l1-submultiplicative", three_series, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const double limit = l1_norm(f) * l1_norm(g);
                                return at_most(l1_norm(f * g), limit, 1e-9 * limit);
                            }});
    return s;
}

Suite inversion_suite()
{
    Suite s{"inversion", "inversion against a dense triangular solve and the Mobius sieve", 40, {}};
    auto unit = [](Rng& rng) {
        const u64 window = static_cast<u64>(rng.uniform(1, 128));
        return Json{{"f", series_to_json(random_unit(rng, exact_spec(window, rng.uniform_real(0.05, 0.3))))}};
    };
    s.properties.push_back({"dense-solve", unit, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                return same_series(dense_inverse(f), invert(f));
                            }});
    s.properties.push_back({"unit-product", unit, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                return same_series(Series::one(f.window()), f * invert(f));
                            }});
    s.properties.push_back({"involution", unit, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                return same_series(f, invert(invert(f)));
                            }});
    s.properties.push_back({"mobius",
                            [](Rng& rng) { return Json{{"N", rng.uniform(1, 1024)}}; },
                            [](const Json& in) {
                                const u64 n = in.at("N").get<u64>();
                                const auto mu = mobius_sieve(n);
                                Series want(n, ScalarMode::exact);
                                for (u64 k = 1; k <= n; ++k) {
                                    want.set(k, Scalar::from_int(mu[k], ScalarMode::exact));
                                }
                                return same_series(want, invert(Series::zeta(n)));
                            }});
    return s;
}

Suite bohr_iso_suite()
{
    Suite s{"bohr-iso", "Bohr lift is an algebra isomorphism on the window", 40, {}};
    auto gen = [](Rng& rng) {
        const auto spec = exact_spec(64, rng.uniform_real(0.05, 0.3));
        return Json{{"f", series_to_json(random_series(rng, spec))},
                    {"g", series_to_json(random_series(rng, spec))},
                    {"r", rational_scalar(rng)}};
    };
    s.properties.push_back({"round-trip", gen, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                return same_series(f, bohr_drop(bohr_lift(f, table()), table(), f.window()));
                            }});
    s.properties.push_back({"additive", gen, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const auto want = poly_add(bohr_lift(f, table()), bohr_lift(g, table()));
                                const auto got = bohr_lift(f + g, table());
                                return PropertyOutcome{want == got, poly_to_json(want), poly_to_json(got)};
                            }});
    s.properties.push_back({"multiplicative", gen, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const auto want = poly_truncate_to_window(
                                    poly_mul(bohr_lift(f, table()), bohr_lift(g, table())), f.window(), table());
                                const auto got = bohr_lift(f * g, table());
                                return PropertyOutcome{want == got, poly_to_json(want), poly_to_json(got)};
                            }});
    s.properties.push_back({"dilation-intertwining", gen, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Scalar r = scalar_at(in, "r", ScalarMode::exact);
                                const auto want = poly_dilate(bohr_lift(f, table()), r);
                                const auto got = bohr_lift(dilate(f, r, table()), table());
                                return PropertyOutcome{want == got, poly_to_json(want), poly_to_json(got)};
                            }});
    return s;
}

Suite action_suite()
{
    Suite s{"prop3.1a", "S_sigma is multiplicative and composes like the permutations", 40, {}};
    s.properties.push_back({"hat-multiplicative",
                            [](Rng& rng) {
                                return Json{{"sigma", random_permutation(rng, 10, 5).to_string()},
                                            {"m", rng.uniform(1, 3000)},
                                            {"n", rng.uniform(1, 3000)}};
                            },
                            [](const Json& in) {
                                const auto sigma = perm_at(in, "sigma");
                                const u64 m = in.at("m").get<u64>();
                                const u64 n = in.at("n").get<u64>();
                                const u64 lhs = hat_apply(sigma, m * n, table());
                                const u64 rhs = hat_apply(sigma, m, table()) * hat_apply(sigma, n, table());
                                return PropertyOutcome{lhs == rhs, rhs, lhs};
                            }});
    auto stable = [](Rng& rng) {
        const auto spec = exact_spec(stable_window(6), 0.15);
        return Json{{"sigma", random_permutation(rng, group_indices, 5).to_string()},
                    {"tau", random_permutation(rng, group_indices, 5).to_string()},
                    {"f", series_to_json(stable_series(rng, 3, stable_window(6), spec))},
                    {"g", series_to_json(stable_series(rng, 3, stable_window(6), spec))}};
    };
    s.properties.push_back({"multiplicative", stable, [](const Json& in) {
                                const auto sigma = perm_at(in, "sigma");
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                return same_series(act(sigma, f * g, table()),
                                                   act(sigma, f, table()) * act(sigma, g, table()));
                            }});
    s.properties.push_back({"multiplicative-on-window",
                            [](Rng& rng) {
                                const auto spec = exact_spec(static_cast<u64>(rng.uniform(2, 256)), 0.1);
                                return Json{{"sigma", random_permutation(rng, 10, 5).to_string()},
                                            {"f", series_to_json(random_series(rng, spec))},
                                            {"g", series_to_json(random_series(rng, spec))}};
                            },
                            [](const Json& in) {
                                // Compared at the images of the window, where both sides are determined.
                                const auto sigma = perm_at(in, "sigma");
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const Series lhs = act(sigma, f * g, table());
                                const Series rhs = act(sigma, f, table()) * act(sigma, g, table());
                                for (u64 n = 1; n <= f.window(); ++n) {
                                    const u64 image = hat_apply(sigma, n, table());
                                    if (image > rhs.window()) {
                                        continue;
                                    }
                                    const Scalar want =
                                        image <= lhs.window() ? lhs.coeff(image) : Scalar::zero(ScalarMode::exact);
                                    if (!(rhs.coeff(image) == want)) {
                                        return PropertyOutcome{false, Json{{"n", image}, {"coeff", scalar_to_json(want)}},
                                                               scalar_to_json(rhs.coeff(image))};
                                    }
                                }
                                return PropertyOutcome{true, nullptr, nullptr};
                            }});
    s.properties.push_back({"composition", stable, [](const Json& in) {
                                const auto sigma = perm_at(in, "sigma");
                                const auto tau = perm_at(in, "tau");
                                const Series f = series_at(in, "f");
                                return same_series(act(sigma, act(tau, f, table()), table()),
                                                   act(compose(sigma, tau), f, table()));
                            }});
    return s;
}

Suite isometry_suite()
{
    Suite s{"prop1.5", "S_sigma preserves the l1 norm and the torus sup of the lift", 30, {}};
    s.properties.push_back({"l1-isometry",
                            [](Rng& rng) {
                                const auto spec = exact_spec(static_cast<u64>(rng.uniform(1, 256)), 0.1);
                                return Json{{"sigma", random_permutation(rng, 10, 6).to_string()},
                                            {"f", series_to_json(random_series(rng, spec))}};
                            },
                            [](const Json& in) {
                                const auto sigma = perm_at(in, "sigma");
                                const Series f = series_at(in, "f");
                                const double want = l1_norm(f);
                                const double got = l1_norm(act(sigma, f, table()));
                                return PropertyOutcome{want == got, want, got};
                            }});
    auto small = [](Rng& rng) {
        static const auto support = smooth_support(4, 2, table());
        return Json{{"sigma", random_permutation(rng, 4, 4).to_string()},
                    {"f", series_to_json(random_series_on(rng, support, 49, float_spec(49, 0.4)))}};
    };
    s.properties.push_back({"lift-relabels", small, [](const Json& in) {
                                const auto sigma = perm_at(in, "sigma");
                                const Series f = series_at(in, "f");
                                const auto want = act(sigma, bohr_lift(f, table()));
                                const auto got = bohr_lift(act(sigma, f, table()), table());
                                return PropertyOutcome{want.terms() == got.terms(), poly_to_json(want),
                                                       poly_to_json(got)};
                            }});
    s.properties.push_back({"torus-sup", small, [](const Json& in) {
                                const auto sigma = perm_at(in, "sigma");
                                const Series f = series_at(in, "f");
                                const double want = torus_sup(bohr_lift(f, table()), 1.0).value;
                                const double got = torus_sup(bohr_lift(act(sigma, f, table()), table()), 1.0).value;
                                return PropertyOutcome{std::abs(want - got) <= 1e-6 * std::max(1.0, want),
                                                       Json{{"value", want}, {"relative_tolerance", 1e-6}}, got};
                            }});
    return s;
}

Json group_and_series(Rng& rng, bool complex)
{
    const auto spec = exact_spec(stable_window(4), 0.15, complex);
    return Json{{"group", random_group(rng)},
                {"f", series_to_json(stable_series(rng, 2, stable_window(4), spec))},
                {"g", series_to_json(stable_series(rng, 2, stable_window(4), spec))}};
}

PermutationGroup group_at(const Json& in) { return group_from_json(in.at("group")); }

Series project(const Series& f, const PermutationGroup& g)
{
    return project_invariant(f, g, UnresolvedPolicy::error, table());
}

Suite projection_suite()
{
    Suite s{"thm1.7", "pi_G is an idempotent norm-one module projection onto the invariants", 30, {}};
    auto complex_inputs = [](Rng& rng) { return group_and_series(rng, true); };
    s.properties.push_back({"idempotent", complex_inputs, [](const Json& in) {
                                const auto g = group_at(in);
                                const Series p = project(series_at(in, "f"), g);
                                return same_series(p, project(p, g));
                            }});
    s.properties.push_back({"l1-nonexpansive", [](Rng& rng) { return group_and_series(rng, false); },
                            [](const Json& in) {
                                // Real rational coefficients keep both norms exact rationals.
                                const auto g = group_at(in);
                                const Series f = series_at(in, "f");
                                const auto before = l1_norm_exact(f);
                                const auto after = l1_norm_exact(project(f, g));
                                if (!before || !after) {
                                    fail(Errc::invalid_argument, "l1-nonexpansive needs real coefficients");
                                }
                                return PropertyOutcome{*after <= *before, Json{{"at_most", before->get_str()}},
                                                       after->get_str()};
                            }});
    s.properties.push_back({"norm-one", complex_inputs, [](const Json& in) {
                                const auto g = group_at(in);
                                const Series one = Series::one(series_at(in, "f").window());
                                const Series p = project(one, g);
                                return every({same_series(one, p),
                                               {l1_norm_exact(p) == Rational(1), "1", l1_norm(p)}});
                            }});
    s.properties.push_back({"module-law", complex_inputs, [](const Json& in) {
                                const auto g = group_at(in);
                                const Series f = project(series_at(in, "f"), g);
                                const Series h = series_at(in, "g");
                                return same_series(f * project(h, g), project(f * h, g));
                            }});
    s.properties.push_back({"range-invariant", complex_inputs, [](const Json& in) {
                                const auto g = group_at(in);
                                return invariant_outcome(is_invariant(project(series_at(in, "f"), g), g, table()));
                            }});
    s.properties.push_back({"invariants-fixed", complex_inputs, [](const Json& in) {
                                // Invariants built independently of pi_G: sums over hand-made orbits.
                                const auto g = group_at(in);
                                const Series f0 = series_at(in, "f");
                                Series f(f0.window(), f0.mode());
                                for (const auto& [n, a] : f0.coeffs()) {
                                    for (const auto& sigma : g.elements()) {
                                        f.set(hat_apply(sigma, n, table()), a);
                                    }
                                }
                                // The last write wins per orbit, so equalize explicitly.
                                Series inv(f.window(), f.mode());
                                for (const auto& [n, a] : f.coeffs()) {
                                    u64 rep = n;
                                    for (const auto& sigma : g.elements()) {
                                        rep = std::min(rep, hat_apply(sigma, n, table()));
                                    }
                                    inv.set(n, f.coeff(rep));
                                }
                                const auto report = is_invariant(inv, g, table());
                                return every({invariant_outcome(report), same_series(inv, project(inv, g))});
                            }});
    s.properties.push_back({"commutes-with-restriction",
                            [](Rng& rng) {
                                Json in = group_and_series(rng, true);
                                std::vector<std::uint32_t> pick;
                                for (std::uint32_t i = 1; i <= 10; ++i) {
                                    if (rng.coin(0.5)) {
                                        pick.push_back(i);
                                    }
                                }
                                in["seeds"] = pick;
                                return in;
                            },
                            [](const Json& in) {
                                // P is the union of the index orbits of the chosen seeds.
                                const auto g = group_at(in);
                                std::set<std::uint32_t> p;
                                for (std::uint32_t i : indices_at(in, "seeds")) {
                                    for (const auto& sigma : g.elements()) {
                                        p.insert(sigma(i));
                                    }
                                }
                                const std::vector<std::uint32_t> indices(p.begin(), p.end());
                                const Series f = series_at(in, "f");
                                return same_series(phi_restrict(project(f, g), indices, table()),
                                                   project(phi_restrict(f, indices, table()), g));
                            }});
    s.properties.push_back({"unresolved-zero",
                            [](Rng& rng) {
                                return Json{{"f", series_to_json(random_series(rng, exact_spec(128, 0.2)))}};
                            },
                            [](const Json& in) {
                                // Every prime index has an infinite orbit under the zigzag cycle.
                                const Series f = series_at(in, "f");
                                const PermutationGroup zig({Permutation::zigzag()});
                                Series want(f.window(), f.mode());
                                want.set(1, f.coeff(1));
                                return same_series(
                                    want, project_invariant(f, zig, UnresolvedPolicy::zero_unresolved, table()));
                            }});
    return s;
}

Suite average_suite()
{
    Suite s{"lemma6.4", "the plain group average equals the orbit-averaging projection", 40, {}};
    s.properties.push_back({"average-equals-projection", [](Rng& rng) { return group_and_series(rng, true); },
                            [](const Json& in) {
                                const auto g = group_at(in);
                                const Series f = series_at(in, "f");
                                return same_series(project(f, g), group_average(f, g, table()));
                            }});
    return s;
}

Suite inverse_closed_suite()
{
    Suite s{"lemma9.1", "inverses of invariant units are invariant", 30, {}};
    s.properties.push_back({"inverse-invariant",
                            [](Rng& rng) {
                                const auto spec = exact_spec(stable_window(3), 0.1);
                                Series f = stable_series(rng, 3, stable_window(3), spec);
                                Scalar a1 = random_scalar(rng, spec);
                                while (a1.is_zero()) {
                                    a1 = random_scalar(rng, spec);
                                }
                                f.set(1, a1);
                                return Json{{"group", random_group(rng)}, {"f", series_to_json(f)}, {"omega", 3}};
                            },
                            [](const Json& in) {
                                // The inverse is taken in the quotient by Omega > omega on the
                                // first 8 primes, a finite window that every group maps onto itself.
                                const auto g = group_at(in);
                                const auto omega = in.at("omega").get<std::uint32_t>();
                                const Series f = project(series_at(in, "f"), g);
                                std::vector<std::uint32_t> first(group_indices);
                                std::iota(first.begin(), first.end(), 1u);
                                const Series inv = omega_truncate(phi_restrict(invert(f), first, table()), omega);
                                const Series check = omega_truncate(f * inv, omega);
                                return every({invariant_outcome(is_invariant(inv, g, table())),
                                               same_series(Series::one(f.window()), check)});
                            }});
    return s;
}

Suite restriction_suite()
{
    Suite s{"prop6.1", "Phi_P is multiplicative and sub-torus sups grow with P", 30, {}};
    s.properties.push_back({"homomorphism",
                            [](Rng& rng) {
                                const auto spec = exact_spec(static_cast<u64>(rng.uniform(1, 300)), 0.1);
                                std::vector<std::uint32_t> p;
                                for (std::uint32_t i = 1; i <= 10; ++i) {
                                    if (rng.coin(0.5)) {
                                        p.push_back(i);
                                    }
                                }
                                return Json{{"f", series_to_json(random_series(rng, spec))},
                                            {"g", series_to_json(random_series(rng, spec))},
                                            {"P", p}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const Series g = series_at(in, "g");
                                const auto p = indices_at(in, "P");
                                return same_series(phi_restrict(f, p, table()) * phi_restrict(g, p, table()),
                                                   phi_restrict(f * g, p, table()));
                            }});
    s.properties.push_back({"nested-sup",
                            [](Rng& rng) {
                                std::vector<std::uint32_t> small;
                                std::vector<std::uint32_t> large;
                                for (std::uint32_t i = 1; i <= 8; ++i) {
                                    const bool in_large = rng.coin(0.7);
                                    if (in_large) {
                                        large.push_back(i);
                                        if (rng.coin(0.6)) {
                                            small.push_back(i);
                                        }
                                    }
                                }
                                const auto spec = float_spec(static_cast<u64>(rng.uniform(2, 20)), 0.4);
                                return Json{{"f", series_to_json(random_series(rng, spec))},
                                            {"P", small},
                                            {"Q", large},
                                            {"r", rng.uniform_real(0.1, 1.0)}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const double r = in.at("r").get<double>();
                                auto sup = [&](const std::vector<std::uint32_t>& p) {
                                    return torus_sup(bohr_lift(phi_restrict(f, p, table()), table()), r).value;
                                };
                                const double small = sup(indices_at(in, "P"));
                                const double large = sup(indices_at(in, "Q"));
                                const double full = torus_sup(bohr_lift(f, table()), r).value;
                                return every({at_most(small, large, 1e-9), at_most(large, full, 1e-9)});
                            }});
    return s;
}

Json bohr_lemma_inputs(Rng& rng)
{
    const auto window = static_cast<u64>(rng.uniform(2, 20));
    Series f = random_series(rng, float_spec(window, rng.uniform_real(0.1, 0.2)));
    if (f.is_zero()) {
        f.set(1, Scalar(FloatComplex(1.0, 0.0)));
    }
    return Json{{"f", series_to_json(f)}, {"T", 1e4}, {"samples", 200001}};
}

struct LineTorus {
    double line;
    double torus;
};

LineTorus line_and_torus(const Json& in)
{
    const Series f = series_at(in, "f");
    const double line = line_sup(f, 0.0, in.at("T").get<double>(), in.at("samples").get<u64>()).sup_estimate;
    const double torus = torus_sup(bohr_lift(f, table()), 1.0).value;
    return {line, torus};
}

Suite bohr_lemma_suite()
{
    Suite s{"bohr-lemma", "sup over the line t in [-T, T] against the torus sup of the lift", 10, {}};
    s.properties.push_back({"line-below-torus", bohr_lemma_inputs, [](const Json& in) {
                                const auto v = line_and_torus(in);
                                return at_most(v.line, v.torus, 1e-9);
                            }});
    Property gap{"relative-gap", bohr_lemma_inputs, [](const Json& in) {
                     const auto v = line_and_torus(in);
                     const double rel = (v.torus - v.line) / std::max(v.torus, 1e-300);
                     return PropertyOutcome{rel <= 1e-2, Json{{"relative_gap_at_most", 1e-2}},
                                            Json{{"line", v.line}, {"torus", v.torus}, {"relative_gap", rel}}};
                 }};
    gap.tolerated_fraction = 0.1;
    s.properties.push_back(std::move(gap));
    return s;
}

Suite dilation_suite()
{
    Suite s{"prop1.1", "dilation contracts the torus sup and the abscissa surrogate", 20, {}};
    auto gen = [](Rng& rng) {
        const auto window = static_cast<u64>(rng.uniform(2, 20));
        return Json{{"f", series_to_json(random_series(rng, float_spec(window, rng.uniform_real(0.2, 0.5))))},
                    {"r", static_cast<double>(rng.uniform(1, 9)) / 10.0}};
    };
    s.properties.push_back({"torus-contraction", gen, [](const Json& in) {
                                const auto p = bohr_lift(series_at(in, "f"), table());
                                const double r = in.at("r").get<double>();
                                const double dilated =
                                    torus_sup(poly_dilate(p, Scalar(FloatComplex(r, 0.0))), 1.0).value;
                                return at_most(dilated, torus_sup(p, 1.0).value, 1e-9);
                            }});
    s.properties.push_back({"abscissa-contraction", gen, [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const double r = in.at("r").get<double>();
                                const Series fr = dilate(f, Scalar(FloatComplex(r, 0.0)), table());
                                return at_most(sigma_u_plus_estimate(fr, table()).value,
                                               sigma_u_plus_estimate(f, table()).value, 1e-9);
                            }});
    return s;
}

Suite seminorm_suite()
{
    Suite s{"prop1.2", "log P_r is nondecreasing and convex in log r", 20, {}};
    s.properties.push_back({"profile-convex",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(2, 20));
                                Series f = random_series(rng, float_spec(window, rng.uniform_real(0.2, 0.5)));
                                if (f.is_zero()) {
                                    f.set(window, Scalar(FloatComplex(1.0, 0.0)));
                                }
                                return Json{{"f", series_to_json(f)}};
                            },
                            [](const Json& in) {
                                const auto grid = profile_grid();
                                const auto profile = seminorm_profile(series_at(in, "f"), grid, table());
                                const auto report = convexity_check(profile);
                                return PropertyOutcome{report.pass, Json{{"tolerance", report.tolerance}},
                                                       Json{{"values", profile.values},
                                                            {"defects", report.defects},
                                                            {"first_differences", report.first_differences}}};
                            }});
    s.properties.push_back({"single-monomial",
                            [](Rng& rng) { return Json{{"r", rng.uniform_real(0.01, 1.0)}}; },
                            [](const Json& in) {
                                const double r = in.at("r").get<double>();
                                Series x1(2, ScalarMode::floating);
                                x1.set(2, Scalar(FloatComplex(1.0, 0.0)));
                                return close(seminorm_Pr(x1, r, table()), r, 1e-9);
                            }});
    s.properties.push_back({"below-l1",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(2, 30));
                                return Json{{"f", series_to_json(random_series(rng, float_spec(window, 0.3)))},
                                            {"r", rng.uniform_real(0.01, 1.0)}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                return at_most(seminorm_Pr(f, in.at("r").get<double>(), table()), l1_norm(f),
                                               1e-12 * std::max(1.0, l1_norm(f)));
                            }});
    return s;
}

Suite cauchy_suite()
{
    Suite s{"eq2.8", "coefficient recovery by the discrete Cauchy integral and the Cauchy bound", 40, {}};
    s.properties.push_back({"dft-recovery",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(1, 64));
                                return Json{{"f", series_to_json(random_series(rng, exact_spec(window, 0.3)))},
                                            {"n", rng.uniform(1, static_cast<std::int64_t>(window))},
                                            {"r", rng.uniform_real(0.2, 1.0)}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const u64 n = in.at("n").get<u64>();
                                const double r = in.at("r").get<double>();
                                const auto lifted = bohr_lift(f, table());
                                std::uint32_t q = 2;
                                const Factorization fn = table().factor(n);
                                for (const auto& e : fn.entries()) {
                                    q = std::max({q, lifted.degree_in(e.index) + 1, e.exponent + 1});
                                }
                                const FloatComplex want = f.coeff(n).as_float();
                                return close(cauchy_coefficient(f, n, q, r, table()), want,
                                             1e-10 * std::max(1.0, std::abs(want)));
                            }});
    s.properties.push_back({"coefficient-bound",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(1, 30));
                                return Json{{"f", series_to_json(random_series(rng, float_spec(window, 0.3)))},
                                            {"r", rng.uniform_real(0.05, 1.0)}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const double r = in.at("r").get<double>();
                                const double sup = torus_sup(bohr_lift(f, table()), r).value;
                                double worst = 0.0;
                                for (const auto& [n, a] : f.coeffs()) {
                                    worst = std::max(worst, a.abs() * std::pow(r, table().omega(n)));
                                }
                                return at_most(worst, sup, 1e-9);
                            }});
    return s;
}

Suite perron_suite()
{
    Suite s{"perron", "Perron quadrature stays within the evaluated sinc-sum bound", 15, {}};
    s.properties.push_back({"within-bound",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(1, 40));
                                const double R = rng.uniform_real(200.0, 2000.0);
                                return Json{{"f", series_to_json(random_series(rng, float_spec(window, 0.2)))},
                                            {"n", rng.uniform(1, static_cast<std::int64_t>(window))},
                                            {"kappa", rng.uniform_real(0.5, 2.0)},
                                            {"R", R},
                                            {"steps", static_cast<u64>(std::ceil(R * 200.0))}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const u64 n = in.at("n").get<u64>();
                                const double kappa = in.at("kappa").get<double>();
                                const double R = in.at("R").get<double>();
                                const u64 steps = in.at("steps").get<u64>();
                                const auto got = perron_recover(f, n, kappa, R, steps);
                                return close(got.value, f.coeff(n).as_float(),
                                             perron_error_bound(f, n, kappa, R, steps));
                            }});
    s.properties.push_back({"fixture",
                            [](Rng&) { return Json{{"kappa", 2.0}, {"R", 2000.0}, {"steps", 400000}}; },
                            [](const Json& in) {
                                Series f(8, ScalarMode::floating);
                                f.set(5, Scalar(FloatComplex(3.0, 0.0)));
                                const double kappa = in.at("kappa").get<double>();
                                const double R = in.at("R").get<double>();
                                const u64 steps = in.at("steps").get<u64>();
                                return every({close(perron_recover(f, 5, kappa, R, steps).value, 3.0, 1e-3),
                                               close(perron_recover(f, 2, kappa, R, steps).value, 0.0, 1e-3)});
                            }});
    return s;
}

Suite analysis_suite()
{
    Suite s{"analysis", "partial sums, line-sup monotonicity and estimator invariance", 20, {}};
    s.properties.push_back({"partial-sum-lift",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(1, 300));
                                return Json{{"f", series_to_json(random_series(rng, float_spec(window, 0.1)))},
                                            {"s", Json::array({rng.uniform_real(0.1, 3.0), rng.uniform_real(-100, 100)})}};
                            },
                            [](const Json& in) {
                                const Series f = series_at(in, "f");
                                const FloatComplex s(in.at("s")[0].get<double>(), in.at("s")[1].get<double>());
                                const FloatComplex want = partial_sum(f, s);
                                const auto p = bohr_lift(f, table());
                                return close(poly_eval(p, eval_c(s, p.nvars(), table())), want,
                                             1e-10 * std::max(1.0, std::abs(want)));
                            }});
    s.properties.push_back({"line-sup-monotone",
                            [](Rng& rng) {
                                const auto window = static_cast<u64>(rng.uniform(2, 40));
                                return Json{{"f", series_to_json(random_series(rng, float_spec(window, 0.3)))},
                                            {"T", rng.uniform_real(10.0, 200.0)},
                                            {"samples", 2 * rng.uniform(1, 2500) + 1}};
                            },
                            [](const Json& in) {
                                // For odd k, doubling T with 2k - 1 samples, or refining to
                                // 2k - 1 samples, keeps every old grid point.
                                const Series f = series_at(in, "f");
                                const double T = in.at("T").get<double>();
                                const u64 k = in.at("samples").get<u64>();
                                // Grid points are recomputed, hence the rounding allowance.
                                LineSupOptions plain;
                                plain.refine = false;
                                const double base = line_sup(f, 0.0, T, k, plain).sup_estimate;
                                const double tol = 1e-12 * std::max(1.0, base);
                                return every({at_most(base, line_sup(f, 0.0, 2 * T, 2 * k - 1, plain).sup_estimate, tol),
                                              at_most(base, line_sup(f, 0.0, T, 2 * k - 1, plain).sup_estimate, tol),
                                              at_most(base, line_sup(f, 0.0, T, k).sup_estimate, tol)});
                            }});
    s.properties.push_back({"invariant-seminorm",
                            [](Rng& rng) {
                                const auto spec = exact_spec(stable_window(2), 0.2);
                                return Json{{"group", random_group(rng)},
                                            {"f", series_to_json(stable_series(rng, 2, stable_window(2), spec))},
                                            {"r", rng.uniform_real(0.1, 1.0)}};
                            },
                            [](const Json& in) {
                                const auto g = group_at(in);
                                const Series f = project(series_at(in, "f"), g).to_mode(ScalarMode::floating);
                                const double r = in.at("r").get<double>();
                                TorusSupOptions coarse;
                                coarse.grid_per_var = 6;
                                const double want = seminorm_Pr(f, r, table(), coarse);
                                std::vector<PropertyOutcome> parts;
                                for (const auto& sigma : g.generators()) {
                                    const double got = seminorm_Pr(act(sigma, f, table()), r, table(), coarse);
                                    parts.push_back({got == want, want, got});
                                }
                                return every(std::move(parts));
                            }});
    return s;
}

Suite orbit_sum_suite()
{
    Suite s{"orbit-sums", "invariant monomial orbit sums of S_k against partition counts", 20, {}};
    s.properties.push_back({"partition-count",
                            [](Rng& rng) { return Json{{"k", rng.uniform(1, 4)}, {"degree", rng.uniform(0, 6)}}; },
                            [](const Json& in) {
                                const auto k = in.at("k").get<unsigned>();
                                const auto d = in.at("degree").get<unsigned>();
                                const auto sums = invariant_orbit_sums(k, d, symmetric_group(k));
                                const auto got = static_cast<u64>(std::count_if(
                                    sums.begin(), sums.end(), [&](const auto& p) { return p.total_degree() == d; }));
                                const u64 brute = sorted_vector_orbits(k, d);
                                const u64 parts = partitions_at_most(d, k);
                                return PropertyOutcome{got == brute && got == parts,
                                                       Json{{"brute_force", brute}, {"partitions", parts}}, got};
                            }});
    s.properties.push_back({"fixed-pointwise",
                            [](Rng& rng) {
                                Json in = random_group(rng);
                                in["degree"] = rng.uniform(0, 3);
                                return Json{{"group", in}, {"degree", in["degree"]}};
                            },
                            [](const Json& in) {
                                const auto g = group_at(in);
                                const auto sums = invariant_orbit_sums(group_indices, in.at("degree").get<unsigned>(), g);
                                for (const auto& p : sums) {
                                    for (const auto& sigma : g.elements()) {
                                        if (act(sigma, p).terms() != p.terms()) {
                                            return PropertyOutcome{false, poly_to_json(p),
                                                                   poly_to_json(act(sigma, p))};
                                        }
                                    }
                                }
                                return PropertyOutcome{true, nullptr, sums.size()};
                            }});
    return s;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt)
{
    // splitmix64 step, so neighbouring seeds give unrelated streams.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t name_hash(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 1099511628211ULL;
    }
    return h;
}

PropertyOutcome run_check(const Property& p, const Json& inputs)
{
    try {
        return p.check(inputs);
    } catch (const std::exception& e) {
        return {false, "no error", Json{{"error", e.what()}}};
    }
}

} // namespace

const std::vector<Suite>& verification_suites()
{
    static const std::vector<Suite> suites{
        primes_suite(),      ring_suite(),        inversion_suite(),     bohr_iso_suite(),  action_suite(),
        isometry_suite(),    projection_suite(),  average_suite(),       inverse_closed_suite(),
        restriction_suite(), bohr_lemma_suite(),  dilation_suite(),      seminorm_suite(),  cauchy_suite(),
        perron_suite(),      analysis_suite(),    orbit_sum_suite(),
    };
    return suites;
}

const Suite* find_suite(const std::string& name)
{
    for (const auto& s : verification_suites()) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

SuiteResult run_suite(const Suite& suite, std::uint64_t seed, std::optional<std::uint32_t> trials)
{
    const auto start = std::chrono::steady_clock::now();
    SuiteResult result;
    result.suite = suite.name;
    result.seed = seed;
    result.trials = trials.value_or(suite.default_trials);
    for (const auto& p : suite.properties) {
        Rng rng(mix(seed, name_hash(suite.name + "/" + p.name)));
        PropertyTally tally{p.name, result.trials, 0, p.tolerated_fraction};
        std::vector<Failure> misses;
        for (std::uint32_t t = 0; t < result.trials; ++t) {
            Json inputs = p.generate(rng);
            PropertyOutcome outcome = run_check(p, inputs);
            if (!outcome.ok) {
                ++tally.misses;
                misses.push_back({p.name, std::move(inputs), std::move(outcome.expected), std::move(outcome.got)});
            }
        }
        if (static_cast<double>(tally.misses) > p.tolerated_fraction * static_cast<double>(result.trials)) {
            for (auto& m : misses) {
                result.failures.push_back(std::move(m));
            }
        }
        result.tallies.push_back(tally);
    }
    result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<SuiteResult> run_verification(const std::string& suite, std::uint64_t seed,
                                          std::optional<std::uint32_t> trials)
{
    std::vector<SuiteResult> results;
    if (suite == "all") {
        for (const auto& s : verification_suites()) {
            results.push_back(run_suite(s, seed, trials));
        }
        return results;
    }
    const Suite* s = find_suite(suite);
    if (s == nullptr) {
        fail(Errc::invalid_argument, "unknown suite '" + suite + "'");
    }
    results.push_back(run_suite(*s, seed, trials));
    return results;
}

Json to_json(const SuiteResult& result)
{
    Json failures = Json::array();
    for (const auto& f : result.failures) {
        failures.push_back(Json{{"suite", result.suite},
                                {"property", f.property},
                                {"inputs", f.inputs},
                                {"expected", f.expected},
                                {"got", f.got}});
    }
    Json tallies = Json::array();
    for (const auto& t : result.tallies) {
        tallies.push_back(Json{{"property", t.property},
                               {"trials", t.trials},
                               {"misses", t.misses},
                               {"tolerated_fraction", t.tolerated_fraction}});
    }
    return Json{{"suite", result.suite}, {"trials", result.trials},   {"seed", result.seed},
                {"passed", result.passed()}, {"elapsed", result.elapsed}, {"properties", tallies},
                {"failures", failures}};
}

PropertyOutcome replay_failure(const Json& failure)
{
    const Suite* s = find_suite(failure.at("suite").get<std::string>());
    if (s == nullptr) {
        fail(Errc::invalid_argument, "unknown suite in replay record");
    }
    const auto name = failure.at("property").get<std::string>();
    for (const auto& p : s->properties) {
        if (p.name == name) {
            return run_check(p, failure.at("inputs"));
        }
    }
    fail(Errc::invalid_argument, "unknown property '" + name + "' in suite " + s->name);
}

} // namespace dseries
