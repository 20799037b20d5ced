// Command-line front end: build series, apply operations, run analyses and
// the verification suites. Every command is deterministic given its flags.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dseries/analysis.hpp"
#include "dseries/bohr.hpp"
#include "dseries/error.hpp"
#include "dseries/group.hpp"
#include "dseries/json_io.hpp"
#include "dseries/random.hpp"
#include "dseries/torus.hpp"
#include "dseries/verify.hpp"

namespace {

using namespace dseries;

constexpr int exit_pass = 0;
constexpr int exit_property_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

constexpr const char* version = "0.1.0";

struct Options {
    u64 window = 64;
    std::string mode = "exact";
    std::uint64_t seed = 0;
    double density = 0.1;
    std::optional<std::uint32_t> trials;
    std::string gens;
    std::string policy = "error";
    std::string indices;
    std::uint32_t grid = 32;
    std::optional<std::uint32_t> refine;
    std::string r = "1";
    std::string r_grid = "0.1:0.9:9";
    double T = 1e4;
    u64 samples = 200001;
    double sigma = 0.0;
    u64 n = 1;
    double kappa = 2.0;
    double R = 2000.0;
    std::optional<u64> steps;
    std::string backend = "torus";
    std::string suite = "all";
    std::string replay;
    std::string out;
    unsigned parallel = 1;
    std::vector<std::string> args;
    bool window_set = false;
};

std::string invocation(int argc, char** argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i) {
        s += (i ? " " : "") + std::string(argv[i]);
    }
    return s;
}

void emit_text(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) {
        fail(Errc::invalid_argument, "cannot write '" + out + "'");
    }
    f << text;
}

void emit(const Json& j, const std::string& out) { emit_text(j.dump(2) + "\n", out); }

Json with_provenance(const Json& body, const std::string& command)
{
    Json out{{"provenance", {{"tool", "dseries"}, {"version", version}, {"command", command}}}};
    for (const auto& [k, v] : body.items()) {
        out[k] = v;
    }
    return out;
}

// "3/4", "-2", "0.25" or a complex pair "re,im".
Scalar parse_scalar(const std::string& text, ScalarMode mode)
{
    const auto comma = text.find(',');
    const std::string re = text.substr(0, comma);
    const std::string im = comma == std::string::npos ? "0" : text.substr(comma + 1);
    if (mode == ScalarMode::floating) {
        try {
            return Scalar(FloatComplex(std::stod(re), std::stod(im)));
        } catch (const std::exception&) {
            fail(Errc::invalid_argument, "malformed number '" + text + "'");
        }
    }
    auto rational = [](const std::string& s) {
        const auto dot = s.find('.');
        if (dot == std::string::npos) {
            return parse_rational(s);
        }
        const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        return parse_rational(digits + "/1" + std::string(s.size() - dot - 1, '0'));
    };
    return Scalar(ExactComplex(rational(re), rational(im)));
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

std::vector<Permutation> parse_generators(const std::string& text)
{
    std::vector<Permutation> gens;
    for (const auto& part : split(text, ';')) {
        gens.push_back(Permutation::parse(part));
    }
    if (gens.empty()) {
        fail(Errc::invalid_argument, "--gens needs at least one permutation");
    }
    return gens;
}

std::vector<std::uint32_t> parse_indices(const std::string& text)
{
    std::vector<std::uint32_t> out;
    for (const auto& part : split(text, ',')) {
        try {
            out.push_back(static_cast<std::uint32_t>(std::stoul(part)));
        } catch (const std::exception&) {
            fail(Errc::invalid_argument, "malformed index '" + part + "'");
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> parse_r_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        fail(Errc::invalid_argument, "--r-grid expects a:b:k");
    }
    const double a = std::stod(parts[0]);
    const double b = std::stod(parts[1]);
    const long k = std::stol(parts[2]);
    if (k < 1 || !(a > 0.0) || b > 1.0 || b < a) {
        fail(Errc::invalid_argument, "--r-grid needs 0 < a <= b <= 1 and k >= 1");
    }
    std::vector<double> grid;
    for (long i = 0; i < k; ++i) {
        grid.push_back(k == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1));
    }
    return grid;
}

PrimeTable table_for(u64 window)
{
    return PrimeTable(std::max<u64>(window, u64{1} << 16));
}

Series load_series(const std::string& path) { return series_from_json(read_json_file(path)); }

TorusSupOptions torus_options(const Options& o)
{
    TorusSupOptions t;
    t.grid_per_var = o.grid;
    t.seed = o.seed;
    t.parallel = o.parallel;
    if (o.refine) {
        t.refine_steps = *o.refine;
    }
    return t;
}

void need_args(const Options& o, std::size_t count, const std::string& what)
{
    if (o.args.size() != count) {
        fail(Errc::invalid_argument, what);
    }
}

int cmd_build(const Options& o, const std::string& command)
{
    if (o.args.empty()) {
        fail(Errc::invalid_argument, "build needs an expression: zeta, unit, monomial n c, random or a file");
    }
    const ScalarMode mode = parse_mode(o.mode);
    const std::string& expr = o.args[0];
    Series f(o.window, mode);
    if (expr == "zeta") {
        f = Series::zeta(o.window, mode);
    } else if (expr == "unit") {
        f = Series::one(o.window, mode);
    } else if (expr == "monomial") {
        need_args(o, 3, "usage: build monomial n c");
        const u64 n = std::stoull(o.args[1]);
        f = Series::monomial(n, parse_scalar(o.args[2], mode), std::max(o.window, n));
    } else if (expr == "random") {
        RandomSeriesSpec spec;
        spec.window = o.window;
        spec.density = o.density;
        spec.mode = mode;
        Rng rng(o.seed);
        f = random_series(rng, spec);
    } else {
        f = load_series(expr);
    }
    emit(with_provenance(series_to_json(f), command), o.out);
    return exit_pass;
}

int cmd_op(const Options& o, const std::string& command)
{
    if (o.args.empty()) {
        fail(Errc::invalid_argument, "op needs a name and input files");
    }
    const std::string& name = o.args[0];
    const std::vector<std::string> inputs(o.args.begin() + 1, o.args.end());
    auto one_input = [&]() {
        if (inputs.size() != 1) {
            fail(Errc::invalid_argument, "op " + name + " takes one input file");
        }
        return inputs[0];
    };
    if (name == "add" || name == "mul") {
        if (inputs.size() != 2) {
            fail(Errc::invalid_argument, "op " + name + " takes two input files");
        }
        const Series f = load_series(inputs[0]);
        const Series g = load_series(inputs[1]);
        emit(with_provenance(series_to_json(name == "add" ? f + g : f * g), command), o.out);
        return exit_pass;
    }
    if (name == "drop") {
        const SparseMultiPoly p = poly_from_json(read_json_file(one_input()));
        const PrimeTable table = table_for(o.window);
        const Series f = bohr_drop(p, table, o.window_set ? std::optional<u64>(o.window) : std::nullopt);
        emit(with_provenance(series_to_json(f), command), o.out);
        return exit_pass;
    }
    const Series f = load_series(one_input());
    const PrimeTable table = table_for(f.window());
    Series result(f.window(), f.mode());
    if (name == "invert") {
        result = invert(f);
    } else if (name == "dilate") {
        result = dilate(f, parse_scalar(o.r, f.mode()), table);
    } else if (name == "lift") {
        emit(with_provenance(poly_to_json(bohr_lift(f, table)), command), o.out);
        return exit_pass;
    } else if (name == "act") {
        const auto gens = parse_generators(o.gens);
        if (gens.size() != 1) {
            fail(Errc::invalid_argument, "op act takes exactly one permutation in --gens");
        }
        result = act(gens[0], f, table);
    } else if (name == "project" || name == "average") {
        const PermutationGroup group(parse_generators(o.gens));
        result = name == "project" ? project_invariant(f, group, parse_policy(o.policy), table)
                                   : group_average(f, group, table);
    } else if (name == "restrict") {
        const auto indices = parse_indices(o.indices);
        result = phi_restrict(f, indices, table);
    } else {
        fail(Errc::invalid_argument, "unknown op '" + name + "'");
    }
    emit(with_provenance(series_to_json(result), command), o.out);
    return exit_pass;
}

int cmd_verify(const Options& o)
{
    if (!o.replay.empty()) {
        const Json record = read_json_file(o.replay);
        Json failures = record.contains("failures") ? record.at("failures") : Json::array({record});
        Json out = Json::array();
        bool ok = true;
        for (const auto& f : failures) {
            const auto outcome = replay_failure(f);
            ok = ok && outcome.ok;
            out.push_back(Json{{"suite", f.at("suite")},
                               {"property", f.at("property")},
                               {"ok", outcome.ok},
                               {"expected", outcome.expected},
                               {"got", outcome.got}});
        }
        emit(Json{{"replay", out}}, o.out);
        return ok ? exit_pass : exit_property_failure;
    }
    if (o.suite != "all" && find_suite(o.suite) == nullptr) {
        std::string known;
        for (const auto& s : verification_suites()) {
            known += " " + s.name;
        }
        fail(Errc::invalid_argument, "unknown suite '" + o.suite + "'; known: all" + known);
    }
    bool ok = true;
    Json results = Json::array();
    for (const auto& s : run_verification(o.suite, o.seed, o.trials)) {
        ok = ok && s.passed();
        results.push_back(to_json(s));
        std::cerr << (s.passed() ? "PASS " : "FAIL ") << s.suite << " (" << s.trials << " trials, " << std::fixed
                  << std::setprecision(2) << s.elapsed << " s)\n";
    }
    emit(o.suite == "all" ? Json{{"seed", o.seed}, {"passed", ok}, {"suites", results}} : results[0], o.out);
    return ok ? exit_pass : exit_property_failure;
}

Json point_json(const TorusSupResult& r)
{
    Json phases = Json::array();
    for (std::size_t i = 1; i < r.phases.size(); ++i) {
        phases.push_back(r.phases[i]);
    }
    return Json{{"phases", phases},
                {"converged", r.converged},
                {"last_relative_change", r.last_relative_change},
                {"grid_points", r.grid_points},
                {"searched_dims", r.searched_dims}};
}

int cmd_analyze(const Options& o)
{
    need_args(o, 2, "analyze takes a kind and one input file");
    const std::string& kind = o.args[0];
    const Series f = load_series(o.args[1]);
    const PrimeTable table = table_for(f.window());
    if (kind == "torus-sup") {
        const double r = std::stod(o.r);
        const auto res = torus_sup(bohr_lift(f, table), r, torus_options(o));
        const double tol = std::max(res.last_relative_change, torus_convergence_tolerance) * res.value;
        emit(report_record("torus-sup", Json{{"r", r}, {"grid", o.grid}, {"seed", o.seed}}, res.value, tol,
                           point_json(res)),
             o.out);
        return res.converged ? exit_pass : exit_numeric;
    }
    if (kind == "seminorm-profile") {
        const auto grid = parse_r_grid(o.r_grid);
        const auto lifted = bohr_lift(f, table);
        std::ostringstream csv;
        csv << "r,value,tolerance\n";
        for (double r : grid) {
            const auto res = torus_sup(lifted, r, torus_options(o));
            const double tol = std::max(res.last_relative_change, torus_convergence_tolerance) * res.value;
            csv << std::setprecision(12) << r << ',' << std::setprecision(17) << res.value << ',' << tol << '\n';
        }
        emit_text(csv.str(), o.out);
        return exit_pass;
    }
    if (kind == "line-sup") {
        LineSupOptions opt;
        opt.parallel = o.parallel;
        if (o.refine) {
            opt.refine = *o.refine > 0;
            opt.refine_candidates = std::max<std::uint32_t>(*o.refine, 1);
        }
        const auto res = line_sup(f, o.sigma, o.T, o.samples, opt);
        emit(report_record("line-sup", Json{{"sigma", o.sigma}, {"T", o.T}, {"samples", o.samples}},
                           res.sup_estimate, 0.0, Json{{"argmax_t", res.argmax_t}, {"refined", res.refined}}),
             o.out);
        return exit_pass;
    }
    if (kind == "sigma-u") {
        SupBackend backend;
        backend.torus = torus_options(o);
        backend.T = o.T;
        backend.samples = o.samples;
        backend.line.parallel = o.parallel;
        if (o.backend == "line") {
            backend.kind = SupBackend::Kind::line;
        } else if (o.backend != "torus") {
            fail(Errc::invalid_argument, "--backend must be torus or line");
        }
        const auto res = sigma_u_plus_estimate(f, table, backend);
        emit(report_record("sigma-u", Json{{"backend", o.backend}, {"window", f.window()}}, res.value, 0.0,
                           Json{{"unclamped", std::isfinite(res.unclamped) ? Json(res.unclamped) : Json("-inf")},
                                {"argmax_window", res.argmax_window}}),
             o.out);
        return exit_pass;
    }
    if (kind == "perron") {
        // Default steps keep the trapezoid term near 1e-6 for log ratios below ~20.
        const u64 steps = o.steps.value_or(static_cast<u64>(std::ceil(o.R * 200.0)));
        const auto res = perron_recover(f, o.n, o.kappa, o.R, steps);
        const double bound = perron_error_bound(f, o.n, o.kappa, o.R, steps);
        emit(report_record("perron", Json{{"n", o.n}, {"kappa", o.kappa}, {"R", o.R}, {"steps", steps}},
                           Json::array({res.value.real(), res.value.imag()}), bound,
                           Json{{"coefficient", scalar_to_json(f.coeff(o.n))}}),
             o.out);
        return exit_pass;
    }
    if (kind == "cauchy") {
        const double r = std::stod(o.r);
        const FloatComplex c = cauchy_coefficient(f, o.n, o.grid, r, table);
        emit(report_record("cauchy", Json{{"n", o.n}, {"grid", o.grid}, {"r", r}},
                           Json::array({c.real(), c.imag()}), 0.0,
                           Json{{"coefficient", scalar_to_json(f.coeff(o.n))}}),
             o.out);
        return exit_pass;
    }
    fail(Errc::invalid_argument, "unknown analysis '" + kind + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Truncated Dirichlet series, Bohr lifts and permutation-invariant subalgebras"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    Options o;

    auto* build = app.add_subcommand("build", "write a series: zeta | unit | monomial n c | random | FILE");
    auto* op = app.add_subcommand("op", "apply add|mul|invert|dilate|lift|drop|act|project|restrict|average");
    auto* verify = app.add_subcommand("verify", "run named verification suites");
    auto* analyze =
        app.add_subcommand("analyze", "torus-sup|seminorm-profile|line-sup|sigma-u|perron|cauchy on a series file");

    for (auto* sub : {build, op, verify, analyze}) {
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--parallel", o.parallel, "threads for grid evaluations")->check(CLI::Range(1u, 256u));
    }
    for (auto* sub : {build, op, analyze}) {
        sub->add_option("args", o.args, "expression or operation followed by inputs");
    }
    build->add_option("--window", o.window, "window N")->check(CLI::Range(u64{1}, u64{1} << 32));
    build->add_option("--mode", o.mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
    build->add_option("--density", o.density, "density for random")->check(CLI::Range(0.0, 1.0));

    auto* op_window = op->add_option("--window", o.window, "target window for drop");
    op->add_option("--r", o.r, "dilation factor (rational, decimal or re,im)");
    op->add_option("--gens", o.gens, "';'-separated permutations in cycle notation, or zigzag");
    op->add_option("--policy", o.policy, "error|zero_unresolved")->check(CLI::IsMember({"error", "zero_unresolved"}));
    op->add_option("--indices", o.indices, "comma-separated prime indices for restrict");

    verify->add_option("--suite", o.suite, "suite name or all");
    verify->add_option("--trials", o.trials, "trials per property (default: per suite)");
    verify->add_option("--replay", o.replay, "re-run failures recorded in a JSON file");

    analyze->add_option("--r", o.r, "radius");
    analyze->add_option("--r-grid", o.r_grid, "a:b:k radius grid for seminorm-profile");
    analyze->add_option("--grid", o.grid, "phases per variable (torus) or Cauchy grid size");
    analyze->add_option("--refine", o.refine, "coordinate-ascent sweeps (torus) or line refinement candidates");
    analyze->add_option("--T", o.T, "half-length of the line segment");
    analyze->add_option("--samples", o.samples, "line samples");
    analyze->add_option("--sigma", o.sigma, "real part of the line");
    analyze->add_option("--n", o.n, "coefficient index");
    analyze->add_option("--kappa", o.kappa, "Perron abscissa");
    analyze->add_option("--R", o.R, "Perron half-length");
    analyze->add_option("--steps", o.steps, "Perron trapezoid intervals");
    analyze->add_option("--backend", o.backend, "torus|line for sigma-u");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    o.window_set = op_window->count() > 0;
    const std::string command = invocation(argc, argv);
    try {
        if (build->parsed()) {
            return cmd_build(o, command);
        }
        if (op->parsed()) {
            return cmd_op(o, command);
        }
        if (verify->parsed()) {
            return cmd_verify(o);
        }
        return cmd_analyze(o);
    } catch (const Error& e) {
        std::cerr << "dseries: " << e.what() << "\n";
        return e.code() == Errc::invalid_argument ? exit_usage : exit_numeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dseries: invalid number: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "dseries: " << e.what() << "\n";
        return exit_numeric;
    }
}
