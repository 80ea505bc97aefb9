#pragma once

#include <string>

#include <json.hpp>

#include "qpal/model.hpp"

namespace qpal {

// {"agents":["a","b"], "states":["s0","s1"],
//  "relations":{"a":[["s0"],["s1"]],"b":[["s0","s1"]]},
//  "valuation":{"p":["s0"]}, "vocabulary":["p","q"], "point":"s0"}
//
// "relations" values are partitions. "vocabulary" defaults to the valuation keys and
// "point" to the first state.

/// Throws ModelError on schema violations.
PointedModel pointed_model_from_json(const nlohmann::json& j);
PointedModel load_pointed_model(const std::string& path);

nlohmann::json to_json(const PointedModel& pm);

}  // namespace qpal
