#pragma once

#include "qmdisc/disc_flows.hpp"

#include <json.hpp>

#include <string>

namespace qmdisc {

// Profile document:
//   {"smoothness": 1,
//    "breakpoints": [[0,1], [1,4], [3,4], [1,1]],
//    "pieces": [[c0, c1, ...], ...]}
// Piece i holds the coefficients (lowest degree first) on
// [breakpoints[i], breakpoints[i+1]]. Every rational is a [numerator,
// denominator] pair or an integer; big parts may be decimal strings.
//
// Flow document:
//   {"terms": [{"profile": <profile>, "time": 1.5}, ...],
//    "allow_boundary": false}
// allow_boundary lifts the support check (rigid rotation and similar).

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const RadialProfile& h);
RadialProfile profile_from_json(const nlohmann::json& j);

nlohmann::json flow_to_json(const FlowSpec& flow);
FlowSpec flow_from_json(const nlohmann::json& j);

/// Parses JSON text; any malformed content becomes InputError.
RadialProfile parse_profile(const std::string& text);
FlowSpec parse_flow(const std::string& text);

/// Reads a whole file; InputError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace qmdisc
