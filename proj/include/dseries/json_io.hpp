#pragma once

#include <string>

#include <json.hpp>

#include "dseries/group.hpp"
#include "dseries/poly.hpp"
#include "dseries/series.hpp"

namespace dseries {

using Json = nlohmann::ordered_json;

/// [re, im]; exact parts are "p/q" strings, float parts are numbers.
Json scalar_to_json(const Scalar& c);
Scalar scalar_from_json(const Json& j, ScalarMode mode);

/// {"window": N, "mode": "exact"|"float", "coeffs": {"n": [re, im], ...}}
Json series_to_json(const Series& f);
Series series_from_json(const Json& j);

/// {"nvars": M, "mode": ..., "terms": [{"exp": {"i": e, ...}, "c": [re, im]}, ...]}
/// "mode" is optional on input; it is inferred from the coefficients.
Json poly_to_json(const SparseMultiPoly& p);
SparseMultiPoly poly_from_json(const Json& j);

/// {"generators": ["(1 2)", ...], "enumeration_cap": k}
Json group_to_json(const PermutationGroup& g);
PermutationGroup group_from_json(const Json& j);

/// One analysis record: {"op", "params", "value", "tolerance", "witness"}.
Json report_record(const std::string& op, Json params, Json value, double tolerance, Json witness = nullptr);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace dseries
