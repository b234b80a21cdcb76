#pragma once

#include <string>
#include <string_view>

#include "avslice/baselines.hpp"
#include "avslice/scenario.hpp"

namespace avslice {

/// Full scenario snapshot (road, channel, stations, vehicles) as JSON. The
/// round trip scenario -> JSON -> scenario -> JSON is byte-identical.
std::string scenario_to_json(const Scenario& s);
/// Throws std::invalid_argument on malformed input or broken invariants.
Scenario scenario_from_json(std::string_view text);

/// Scheme outcome with its operating point (slicing, association,
/// allocation, powers, per-vehicle rates).
std::string scheme_result_to_json(const SchemeResult& r);

}  // namespace avslice
