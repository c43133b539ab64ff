#pragma once

#include "adaptbound/core.hpp"
#include "adaptbound/design.hpp"

#include <json.hpp>

#include <string>

namespace adaptbound::report {

using Json = nlohmann::ordered_json;

// Finite check happens here so a NaN never reaches a report.
Json number(double value);
Json optional_number(const std::optional<double>& value);

Json to_json(const StateSpace& space);
// names carries the model ids used to label selection frequencies.
Json to_json(const OracleOutcome& outcome, const StateSpace& space);
// Continuous bounds have no per-state selection.
Json to_json(const OracleOutcome& outcome);
Json to_json(const AlphaProfile& profile);
Json to_json(const ErrorCascade& cascade);
Json to_json(const SubsetPlan& plan, const StateSpace& space);
Json to_json(const R1Criterion& criterion);
Json to_json(const Envelope& envelope);

// Deterministic rendering: keys in insertion order, two-space indent,
// floats with 12 significant digits, trailing newline.
std::string render(const Json& document);

} // namespace adaptbound::report
