#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "dseries/analysis.hpp"
#include "dseries/bohr.hpp"
#include "dseries/error.hpp"
#include "dseries/group.hpp"
#include "dseries/json_io.hpp"
#include "dseries/random.hpp"
#include "dseries/torus.hpp"
#include "dseries/verify.hpp"

namespace py = pybind11;
using namespace dseries;

namespace {

// Shared sieve, grown on demand for larger windows.
const PrimeTable& table_for(u64 window)
{
    static std::unique_ptr<PrimeTable> table;
    const u64 want = std::max<u64>(window, u64{1} << 20);
    if (!table || table->bound() < want) {
        table = std::make_unique<PrimeTable>(want);
    }
    return *table;
}

py::object fraction(const Rational& q)
{
    const py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

Rational to_rational(py::handle v)
{
    if (py::isinstance<py::str>(v)) {
        return parse_rational(v.cast<std::string>());
    }
    if (py::isinstance<py::int_>(v)) {
        return parse_rational(py::str(v).cast<std::string>());
    }
    if (py::hasattr(v, "numerator") && py::hasattr(v, "denominator") && !py::isinstance<py::float_>(v)) {
        return parse_rational(py::str(v.attr("numerator")).cast<std::string>() + "/" +
                              py::str(v.attr("denominator")).cast<std::string>());
    }
    throw py::type_error("exact coefficients must be int, str or fractions.Fraction");
}

Scalar to_scalar(py::handle v, ScalarMode mode)
{
    if (mode == ScalarMode::floating) {
        return Scalar(v.cast<FloatComplex>());
    }
    if (py::isinstance<py::tuple>(v)) {
        const auto t = v.cast<py::tuple>();
        if (t.size() != 2) {
            throw py::type_error("complex exact coefficients are (re, im) pairs");
        }
        return Scalar(ExactComplex(to_rational(t[0]), to_rational(t[1])));
    }
    return Scalar(ExactComplex(to_rational(v)));
}

// Fraction for exact reals, (Fraction, Fraction) for exact complex values,
// complex in float mode.
py::object from_scalar(const Scalar& c)
{
    if (!c.is_exact()) {
        return py::cast(c.as_float());
    }
    const auto& e = c.exact();
    if (e.im() == 0) {
        return fraction(e.re());
    }
    return py::make_tuple(fraction(e.re()), fraction(e.im()));
}

py::object to_python(const Json& j)
{
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

Json from_python(const py::object& o)
{
    const py::object dumps = py::module_::import("json").attr("dumps");
    return Json::parse(dumps(o).cast<std::string>());
}

Series make_series(u64 window, const py::dict& coeffs, const std::string& mode)
{
    const ScalarMode m = parse_mode(mode);
    Series f(window, m);
    for (const auto& [k, v] : coeffs) {
        f.set(k.cast<u64>(), to_scalar(v, m));
    }
    return f;
}

py::dict coeff_dict(const Series& f)
{
    py::dict out;
    for (const auto& [n, c] : f.coeffs()) {
        out[py::int_(n)] = from_scalar(c);
    }
    return out;
}

std::vector<Permutation> parse_gens(const std::vector<std::string>& gens)
{
    std::vector<Permutation> out;
    for (const auto& g : gens) {
        out.push_back(Permutation::parse(g));
    }
    return out;
}

TorusSupOptions torus_options(std::uint32_t grid, std::uint64_t seed, unsigned parallel)
{
    TorusSupOptions o;
    o.grid_per_var = grid;
    o.seed = seed;
    o.parallel = parallel;
    return o;
}

} // namespace

PYBIND11_MODULE(_dseries, m)
{
    m.doc() = "Truncated Dirichlet series, Bohr lifts and permutation-invariant subalgebras";

    // Messages start with the error code, e.g. "not-invertible: ...".
    py::register_exception<Error>(m, "DseriesError", PyExc_ValueError);

    py::class_<Series>(m, "Series")
        .def(py::init(&make_series), py::arg("window"), py::arg("coeffs") = py::dict(), py::arg("mode") = "exact")
        .def_static(
            "zeta", [](u64 window, const std::string& mode) { return Series::zeta(window, parse_mode(mode)); },
            py::arg("window"), py::arg("mode") = "exact")
        .def_static(
            "one", [](u64 window, const std::string& mode) { return Series::one(window, parse_mode(mode)); },
            py::arg("window"), py::arg("mode") = "exact")
        .def_static(
            "from_json", [](const std::string& text) { return series_from_json(Json::parse(text)); }, py::arg("text"))
        .def_property_readonly("window", &Series::window)
        .def_property_readonly("mode", [](const Series& f) { return to_string(f.mode()); })
        .def("coeffs", &coeff_dict)
        .def("coeff", [](const Series& f, u64 n) { return from_scalar(f.coeff(n)); })
        .def("to_json", [](const Series& f) { return series_to_json(f).dump(); })
        .def("to_mode", [](const Series& f, const std::string& mode) { return f.to_mode(parse_mode(mode)); })
        .def("identical", &Series::identical)
        .def("__len__", &Series::size)
        .def("__add__", [](const Series& f, const Series& g) { return f + g; })
        .def("__sub__", [](const Series& f, const Series& g) { return f - g; })
        .def("__mul__", [](const Series& f, const Series& g) { return f * g; })
        .def("__eq__", [](const Series& f, const Series& g) { return f == g; })
        .def("__repr__", [](const Series& f) {
            return "Series(window=" + std::to_string(f.window()) + ", mode=" + to_string(f.mode()) +
                   ", terms=" + std::to_string(f.size()) + ")";
        });

    m.def("invert", [](const Series& f) { return invert(f); }, py::arg("f"));
    m.def(
        "dilate", [](const Series& f, py::handle r) { return dilate(f, to_scalar(r, f.mode()), table_for(f.window())); },
        py::arg("f"), py::arg("r"));
    m.def("l1_norm", &l1_norm, py::arg("f"));
    m.def(
        "l1_norm_exact",
        [](const Series& f) -> py::object {
            const auto v = l1_norm_exact(f);
            return v ? fraction(*v) : py::none();
        },
        py::arg("f"));
    m.def(
        "random_series",
        [](std::uint64_t seed, u64 window, double density, const std::string& mode) {
            RandomSeriesSpec spec;
            spec.window = window;
            spec.density = density;
            spec.mode = parse_mode(mode);
            Rng rng(seed);
            return random_series(rng, spec);
        },
        py::arg("seed"), py::arg("window") = 64, py::arg("density") = 0.1, py::arg("mode") = "exact");

    m.def(
        "lift", [](const Series& f) { return to_python(poly_to_json(bohr_lift(f, table_for(f.window())))); },
        py::arg("f"), "Bohr lift as a JSON-style dict {nvars, mode, terms}.");
    m.def(
        "drop",
        [](const py::object& poly, std::optional<u64> window) {
            return bohr_drop(poly_from_json(from_python(poly)), table_for(window.value_or(0)), window);
        },
        py::arg("poly"), py::arg("window") = py::none());

    m.def(
        "act",
        [](const std::string& sigma, const Series& f) {
            return act(Permutation::parse(sigma), f, table_for(f.window()));
        },
        py::arg("sigma"), py::arg("f"));
    m.def(
        "hat", [](const std::string& sigma, u64 n) { return hat_apply(Permutation::parse(sigma), n, table_for(n)); },
        py::arg("sigma"), py::arg("n"));
    m.def(
        "project",
        [](const Series& f, const std::vector<std::string>& gens, const std::string& policy) {
            return project_invariant(f, PermutationGroup(parse_gens(gens)), parse_policy(policy),
                                     table_for(f.window()));
        },
        py::arg("f"), py::arg("gens"), py::arg("policy") = "error");
    m.def(
        "group_average",
        [](const Series& f, const std::vector<std::string>& gens) {
            return group_average(f, PermutationGroup(parse_gens(gens)), table_for(f.window()));
        },
        py::arg("f"), py::arg("gens"));
    m.def(
        "is_invariant",
        [](const Series& f, const std::vector<std::string>& gens) {
            const auto r = is_invariant(f, PermutationGroup(parse_gens(gens)), table_for(f.window()));
            const char* status = r.status == InvarianceReport::Status::invariant  ? "invariant"
                                 : r.status == InvarianceReport::Status::violated ? "violated"
                                                                                  : "inconclusive";
            py::dict out;
            out["status"] = status;
            out["witness"] = r.witness;
            out["generator"] = r.generator;
            out["escaping"] = r.escaping;
            return out;
        },
        py::arg("f"), py::arg("gens"));
    m.def(
        "restrict",
        [](const Series& f, std::vector<std::uint32_t> indices) {
            std::sort(indices.begin(), indices.end());
            return phi_restrict(f, indices, table_for(f.window()));
        },
        py::arg("f"), py::arg("indices"));

    m.def(
        "partial_sum", [](const Series& f, FloatComplex s) { return partial_sum(f, s); }, py::arg("f"), py::arg("s"));
    m.def(
        "torus_sup",
        [](const Series& f, double r, std::uint32_t grid, std::uint64_t seed, unsigned parallel) {
            const auto res = torus_sup(bohr_lift(f, table_for(f.window())), r, torus_options(grid, seed, parallel));
            py::dict out;
            out["value"] = res.value;
            out["phases"] = std::vector<double>(res.phases.begin() + (res.phases.empty() ? 0 : 1), res.phases.end());
            out["converged"] = res.converged;
            out["searched_dims"] = res.searched_dims;
            return out;
        },
        py::arg("f"), py::arg("r") = 1.0, py::arg("grid") = 32, py::arg("seed") = 0, py::arg("parallel") = 1);
    m.def(
        "line_sup",
        [](const Series& f, double sigma, double T, u64 samples, bool refine) {
            LineSupOptions o;
            o.refine = refine;
            const auto res = line_sup(f, sigma, T, samples, o);
            py::dict out;
            out["value"] = res.sup_estimate;
            out["argmax_t"] = res.argmax_t;
            return out;
        },
        py::arg("f"), py::arg("sigma") = 0.0, py::arg("T") = 1e4, py::arg("samples") = 200001,
        py::arg("refine") = true);
    m.def(
        "seminorm", [](const Series& f, double r) { return seminorm_Pr(f, r, table_for(f.window())); }, py::arg("f"),
        py::arg("r"));
    m.def(
        "seminorm_profile",
        [](const Series& f, const std::vector<double>& grid) {
            return seminorm_profile(f, grid, table_for(f.window())).values;
        },
        py::arg("f"), py::arg("r_grid"));
    m.def(
        "convexity_check",
        [](const std::vector<double>& r_grid, const std::vector<double>& values, double tolerance) {
            SeminormProfile p;
            p.r_grid = r_grid;
            p.values = values;
            const auto rep = convexity_check(p, tolerance);
            py::dict out;
            out["pass"] = rep.pass;
            out["monotone"] = rep.monotone;
            out["defects"] = rep.defects;
            out["first_differences"] = rep.first_differences;
            return out;
        },
        py::arg("r_grid"), py::arg("values"), py::arg("tolerance") = default_convexity_tolerance);
    m.def(
        "sigma_u_plus",
        [](const Series& f) { return sigma_u_plus_estimate(f, table_for(f.window())).value; }, py::arg("f"));
    m.def(
        "perron",
        [](const Series& f, u64 n, double kappa, double R, std::optional<u64> steps) {
            const u64 s = steps.value_or(static_cast<u64>(std::ceil(R * 200.0)));
            py::dict out;
            out["value"] = perron_recover(f, n, kappa, R, s).value;
            out["bound"] = perron_error_bound(f, n, kappa, R, s);
            return out;
        },
        py::arg("f"), py::arg("n"), py::arg("kappa") = 2.0, py::arg("R") = 2000.0, py::arg("steps") = py::none());
    m.def(
        "cauchy",
        [](const Series& f, u64 n, std::uint32_t grid, double r) {
            return cauchy_coefficient(f, n, grid, r, table_for(f.window()));
        },
        py::arg("f"), py::arg("n"), py::arg("grid"), py::arg("r") = 1.0);

    m.def("suites", []() {
        std::vector<std::string> names;
        for (const auto& s : verification_suites()) {
            names.push_back(s.name);
        }
        return names;
    });
    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed, std::optional<std::uint32_t> trials) {
            py::list out;
            for (const auto& r : run_verification(suite, seed, trials)) {
                out.append(to_python(to_json(r)));
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 0, py::arg("trials") = py::none());
    m.def(
        "replay", [](const py::object& failure) { return replay_failure(from_python(failure)).ok; },
        py::arg("failure"));
}
