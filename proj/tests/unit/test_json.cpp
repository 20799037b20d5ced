#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "dseries/bohr.hpp"
#include "dseries/error.hpp"
#include "dseries/json_io.hpp"
#include "dseries/random.hpp"
#include "helpers.hpp"

using namespace dseries;

TEST_CASE("series documents")
{
    Series f(12, ScalarMode::exact);
    f.set(2, Scalar(ExactComplex(Rational(3, 7), Rational(-1))));
    f.set(12, Scalar(ExactComplex(Rational(5))));
    const Json j = series_to_json(f);
    CHECK(j.dump() == R"({"window":12,"mode":"exact","coeffs":{"2":["3/7","-1"],"12":["5","0"]}})");
    CHECK(series_from_json(j).identical(f));

    const Json loose = Json::parse(R"({"window": 4, "coeffs": {"1": 2, "3": ["1/2", 0]}})");
    const Series g = series_from_json(loose);
    CHECK(g.mode() == ScalarMode::exact);
    CHECK(g.coeff(1) == helpers::q(2));
    CHECK(g.coeff(3) == helpers::q(1, 2));

    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"window": 4})")), Error);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"window": 4, "coeffs": {"5": 1}})")), Error);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"window": 4, "coeffs": {"x": 1}})")), Error);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"window": 4, "coeffs": {"1": "1/0"}})")), Error);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"window": 4, "coeffs": {"1": 0.5}})")), Error);
}

TEST_CASE("series round trips are lossless")
{
    Rng rng(167);
    RandomSeriesSpec spec;
    spec.window = 200;
    spec.density = 0.2;
    spec.max_den = 1000;
    for (int trial = 0; trial < 50; ++trial) {
        const Series f = random_series(rng, spec);
        REQUIRE(series_from_json(Json::parse(series_to_json(f).dump())).identical(f));
    }
    spec.mode = ScalarMode::floating;
    for (int trial = 0; trial < 50; ++trial) {
        const Series f = random_series(rng, spec);
        REQUIRE(series_from_json(Json::parse(series_to_json(f).dump())).identical(f));
    }
}

TEST_CASE("polynomial documents")
{
    const PrimeTable table(100);
    Series f(40, ScalarMode::exact);
    f.set(1, helpers::q(1));
    f.set(40, helpers::q(-2, 3));
    const auto p = bohr_lift(f, table);
    const Json j = poly_to_json(p);
    CHECK(poly_from_json(j) == p);
    const Json floaty = Json::parse(R"({"nvars": 2, "terms": [{"exp": {"1": 1}, "c": [1.5, 0.0]}]})");
    CHECK(poly_from_json(floaty).mode() == ScalarMode::floating);
    const Json merged = Json::parse(R"({"nvars": 2, "terms": [{"exp": {"1": 1}, "c": [1, 0]}, {"exp": {"1": 1, "2": 0}, "c": [2, 0]}]})");
    CHECK(poly_from_json(merged).coeff(Monomial({{1, 1}})) == helpers::q(3));
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"nvars": 1, "terms": [{"exp": {"2": 1}, "c": [1, 0]}]})")), Error);
}

TEST_CASE("group documents")
{
    const PermutationGroup g({Permutation::parse("(1 2)"), Permutation::parse("(3 4 5)")}, 77);
    const Json j = group_to_json(g);
    CHECK(j.dump() == R"j({"generators":["(1 2)","(3 4 5)"],"enumeration_cap":77})j");
    const auto back = group_from_json(j);
    CHECK(back.order() == 6);
    CHECK(back.enumeration_cap() == 77);
    CHECK(group_from_json(Json::parse(R"({"generators": ["zigzag"]})")).generators()[0].to_string() ==
          "(... 4 2 1 3 5 ...)");
}

TEST_CASE("files")
{
    const auto path = (std::filesystem::temp_directory_path() / "dseries_json_test.json").string();
    write_json_file(path, report_record("x", Json{{"a", 1}}, 2.5, 1e-9));
    const Json back = read_json_file(path);
    CHECK(back["op"] == "x");
    CHECK(back["value"] == 2.5);
    CHECK(back["witness"].is_null());
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file(path), Error);
}
