#pragma once

#include "json.hpp"

#include "criteria.hpp"
#include "norms.hpp"
#include "quasiconcave.hpp"
#include "verify.hpp"

namespace reartool {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Finite numbers as JSON numbers; infinities and NaN as "inf", "-inf", "nan".
json number_json(double v);
/// Inverse of number_json.
double json_number(const json& j);

json to_json(const BReport& r);
json to_json(const NormValue& r);
json to_json(const ConditionReport& r);
json to_json(const LemmaVerdict& r);
json to_json(const EmbeddingReport& r);

}  // namespace reartool
