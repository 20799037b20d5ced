#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dseries/json_io.hpp"
#include "dseries/random.hpp"

namespace dseries {

struct PropertyOutcome {
    bool ok = true;
    Json expected;
    Json got;
};

/// A randomized check split into a generator and a pure checker, so that
/// the generated inputs can be stored and replayed verbatim.
struct Property {
    std::string name;
    std::function<Json(Rng&)> generate;
    std::function<PropertyOutcome(const Json&)> check;
    /// Fraction of trials allowed to fail before the property fails
    /// (statistical properties only; 0 for identities and bounds).
    double tolerated_fraction = 0.0;
};

struct Suite {
    std::string name;
    std::string summary;
    std::uint32_t default_trials = 20;
    std::vector<Property> properties;
};

struct Failure {
    std::string property;
    Json inputs;
    Json expected;
    Json got;
};

struct PropertyTally {
    std::string property;
    std::uint32_t trials = 0;
    std::uint32_t misses = 0;
    double tolerated_fraction = 0.0;
};

struct SuiteResult {
    std::string suite;
    std::uint32_t trials = 0;
    std::uint64_t seed = 0;
    /// Recorded misses of properties that failed overall.
    std::vector<Failure> failures;
    std::vector<PropertyTally> tallies;
    double elapsed = 0.0;

    bool passed() const noexcept { return failures.empty(); }
};

const std::vector<Suite>& verification_suites();
const Suite* find_suite(const std::string& name);

/// Runs `trials` rounds (default: the suite's own) of every property. Each
/// property draws from its own generator seeded by (seed, suite and property name).
SuiteResult run_suite(const Suite& suite, std::uint64_t seed, std::optional<std::uint32_t> trials = std::nullopt);

/// "all" runs every suite in registry order. Unknown names throw invalid_argument.
std::vector<SuiteResult> run_verification(const std::string& suite, std::uint64_t seed,
                                          std::optional<std::uint32_t> trials = std::nullopt);

Json to_json(const SuiteResult& result);

/// Re-runs one recorded failure: {"suite", "property", "inputs"}.
PropertyOutcome replay_failure(const Json& failure);

} // namespace dseries
