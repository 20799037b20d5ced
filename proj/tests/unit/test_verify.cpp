#include <doctest.h>

#include <set>

#include "dseries/error.hpp"
#include "dseries/verify.hpp"

using namespace dseries;

TEST_CASE("suite registry")
{
    std::set<std::string> names;
    for (const auto& s : verification_suites()) {
        CHECK(names.insert(s.name).second);
        CHECK_FALSE(s.properties.empty());
        CHECK(find_suite(s.name) == &s);
    }
    for (const char* anchor : {"prop3.1a", "thm1.7", "lemma6.4", "lemma9.1", "prop6.1", "prop1.1", "prop1.2", "prop1.5",
                               "eq2.8", "bohr-lemma", "perron", "orbit-sums"}) {
        CHECK(names.count(anchor) == 1);
    }
    CHECK(find_suite("all") == nullptr);
    CHECK_THROWS_AS(run_verification("no-such-suite", 1), Error);
}

TEST_CASE("suite runs are deterministic in the seed")
{
    const auto a = run_verification("ring", 42, 3);
    const auto b = run_verification("ring", 42, 3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].passed());
    CHECK(a[0].trials == 3);
    const Suite* ring = find_suite("ring");
    Rng r1(7);
    Rng r2(7);
    CHECK(ring->properties[0].generate(r1) == ring->properties[0].generate(r2));
    Json ja = to_json(a[0]);
    Json jb = to_json(b[0]);
    ja.erase("elapsed");
    jb.erase("elapsed");
    CHECK(ja == jb);
}

TEST_CASE("replay of a recorded case")
{
    const Suite* inversion = find_suite("inversion");
    Rng rng(3);
    const Json inputs = inversion->properties[0].generate(rng);
    const Json record{{"suite", "inversion"}, {"property", inversion->properties[0].name}, {"inputs", inputs}};
    CHECK(replay_failure(record).ok);

    // A non-unit makes the inversion property report the error as a failure.
    const Json bad = Json::parse(R"({"suite": "inversion", "property": "unit-product",
        "inputs": {"f": {"window": 4, "mode": "exact", "coeffs": {"2": ["1", "0"]}}}})");
    const auto outcome = replay_failure(bad);
    CHECK_FALSE(outcome.ok);
    CHECK(outcome.got.contains("error"));

    CHECK_THROWS_AS(replay_failure(Json{{"suite", "ring"}, {"property", "nope"}, {"inputs", Json::object()}}), Error);
}

TEST_CASE("tolerated misses do not fail a suite")
{
    Suite s{"toy", "", 10, {}};
    Property flaky{"flaky", [](Rng& rng) { return Json{{"x", rng.uniform(0, 9)}}; },
                   [](const Json& in) { return PropertyOutcome{in.at("x").get<int>() != 0, nullptr, nullptr}; }};
    flaky.tolerated_fraction = 1.0;
    s.properties.push_back(flaky);
    CHECK(run_suite(s, 1, 50).passed());
    s.properties[0].tolerated_fraction = 0.0;
    const auto strict = run_suite(s, 1, 50);
    CHECK_FALSE(strict.passed());
    CHECK(strict.tallies[0].misses == strict.failures.size());
}
