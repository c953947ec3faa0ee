#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "etr/explorer.hpp"

namespace etr {

using Json = nlohmann::json;

// JSON schemas (complex entries are two-element arrays [re, im]):
//   observable     {"dim": d, "matrix": [[[re,im], ...], ...]}
//   state          {"pure": [[re,im], ...]} or {"density": [[[re,im], ...], ...]}
//   scheme         {"ancilla": state-or-null, "estA": observable, "estB": observable}
//   decomposition  {"weights": [...], "components": [state, ...]}

Json to_json(const Observable& obs);
Json to_json(const QuantumState& state);
Json to_json(const JointScheme& scheme);
Json to_json(const FixedParams& params);
Json to_json(const SchemeStats& stats);
Json to_json(const RelationVerdict& verdict);
Json to_json(const Decomposition& decomposition);
Json to_json(const QubitExampleReport& report);

Observable observable_from_json(const Json& j);
QuantumState state_from_json(const Json& j);
JointScheme scheme_from_json(const Json& j);
Decomposition decomposition_from_json(const Json& j);

/// Parses a JSON document, wrapping syntax errors in ParseError with the
/// originating label (file name) attached.
Json parse_json(const std::string& text, const std::string& label);
Json load_json_file(const std::string& path);

/// Shortest exact decimal for a double (17 significant digits).
std::string format_double(double value);

} // namespace etr
