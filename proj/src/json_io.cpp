#include "dseries/json_io.hpp"

#include <fstream>
#include <limits>

#include "dseries/error.hpp"

namespace dseries {

namespace {

u64 parse_index(const std::string& key)
{
    if (key.empty() || key.size() > 19 || key.find_first_not_of("0123456789") != std::string::npos) {
        fail(Errc::invalid_argument, "bad integer key '" + key + "'");
    }
    return std::stoull(key);
}

Json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(std::to_string(j.get<long long>()));
    }
    fail(Errc::invalid_argument, "exact coefficients are \"p/q\" strings or integers");
}

double double_from_json(const Json& j)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>()).get_d();
    }
    fail(Errc::invalid_argument, "float coefficients are numbers");
}

} // namespace

Json scalar_to_json(const Scalar& c)
{
    if (c.is_exact()) {
        return Json::array({rational_to_json(c.exact().re()), rational_to_json(c.exact().im())});
    }
    const auto v = c.as_float();
    return Json::array({v.real(), v.imag()});
}

Scalar scalar_from_json(const Json& j, ScalarMode mode)
{
    const bool pair = j.is_array() && j.size() == 2;
    if (!pair && !j.is_number() && !j.is_string()) {
        fail(Errc::invalid_argument, "coefficient must be [re, im]");
    }
    const Json re = pair ? j[0] : j;
    const Json im = pair ? j[1] : Json(0);
    if (mode == ScalarMode::exact) {
        return Scalar(ExactComplex(rational_from_json(re), rational_from_json(im)));
    }
    return Scalar(FloatComplex(double_from_json(re), double_from_json(im)));
}

Json series_to_json(const Series& f)
{
    Json coeffs = Json::object();
    for (const auto& [n, c] : f.coeffs()) {
        coeffs[std::to_string(n)] = scalar_to_json(c);
    }
    return Json{{"window", f.window()}, {"mode", to_string(f.mode())}, {"coeffs", coeffs}};
}

Series series_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("window") || !j.contains("coeffs")) {
        fail(Errc::invalid_argument, "series document needs \"window\" and \"coeffs\"");
    }
    const ScalarMode mode = parse_mode(j.value("mode", std::string("exact")));
    Series f(j.at("window").get<u64>(), mode);
    for (const auto& [key, value] : j.at("coeffs").items()) {
        f.set(parse_index(key), scalar_from_json(value, mode));
    }
    return f;
}

Json poly_to_json(const SparseMultiPoly& p)
{
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json exp = Json::object();
        for (const auto& e : m.entries()) {
            exp[std::to_string(e.index)] = e.exponent;
        }
        terms.push_back(Json{{"exp", exp}, {"c", scalar_to_json(c)}});
    }
    return Json{{"nvars", p.nvars()}, {"mode", to_string(p.mode())}, {"terms", terms}};
}

SparseMultiPoly poly_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("nvars") || !j.contains("terms")) {
        fail(Errc::invalid_argument, "polynomial document needs \"nvars\" and \"terms\"");
    }
    ScalarMode mode = ScalarMode::exact;
    if (j.contains("mode")) {
        mode = parse_mode(j.at("mode").get<std::string>());
    } else {
        for (const auto& t : j.at("terms")) {
            for (const auto& part : t.at("c")) {
                if (part.is_number_float()) {
                    mode = ScalarMode::floating;
                }
            }
        }
    }
    SparseMultiPoly p(j.at("nvars").get<std::uint32_t>(), mode);
    for (const auto& t : j.at("terms")) {
        std::vector<PrimePower> entries;
        for (const auto& [key, e] : t.at("exp").items()) {
            const auto exponent = e.get<std::uint32_t>();
            if (exponent > 0) {
                entries.push_back({static_cast<std::uint32_t>(parse_index(key)), exponent});
            }
        }
        std::sort(entries.begin(), entries.end());
        const Monomial m(std::move(entries));
        p.set(m, p.coeff(m) + scalar_from_json(t.at("c"), mode));
    }
    return p;
}

Json group_to_json(const PermutationGroup& g)
{
    Json gens = Json::array();
    for (const auto& sigma : g.generators()) {
        gens.push_back(sigma.to_string());
    }
    return Json{{"generators", gens}, {"enumeration_cap", g.enumeration_cap()}};
}

PermutationGroup group_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("generators")) {
        fail(Errc::invalid_argument, "group document needs \"generators\"");
    }
    std::vector<Permutation> gens;
    for (const auto& text : j.at("generators")) {
        gens.push_back(Permutation::parse(text.get<std::string>()));
    }
    return PermutationGroup(std::move(gens), j.value("enumeration_cap", default_enumeration_cap));
}

Json report_record(const std::string& op, Json params, Json value, double tolerance, Json witness)
{
    return Json{{"op", op}, {"params", std::move(params)}, {"value", std::move(value)}, {"tolerance", tolerance},
                {"witness", std::move(witness)}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(Errc::invalid_argument, "cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::invalid_argument, "malformed JSON in '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) {
        fail(Errc::invalid_argument, "cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

} // namespace dseries
