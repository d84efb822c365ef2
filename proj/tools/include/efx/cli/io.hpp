#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "efx/engine.hpp"
#include "efx/model.hpp"
#include "efx/rainbow.hpp"

namespace efx::cli {

using json = nlohmann::ordered_json;

/// Integers become JSON numbers, everything else a "p/q" string.
json rational_to_json(const Rational& value);
/// Accepts JSON integers and "p", "p/q" strings. Floats are rejected because
/// they cannot be read back exactly.
Rational rational_from_json(const json& value);

/// {"num_agents", "num_goods", "epsilon": "p/q", "valuations": [[...], ...]}.
/// A flat row-major valuation array is accepted on input.
json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& doc);

/// {"bundles": [[goods], ...], "pool": [goods]}.
json allocation_to_json(const PartialAllocation& alloc);
PartialAllocation allocation_from_json(const json& doc);

/// Graph plus the optional per-part vertex labels it was read with.
struct GraphDocument {
  KPartiteDigraph graph;
  std::optional<std::vector<std::vector<std::string>>> labels;
};

/// {"parts": [sizes] or [[labels]], "edges": [[i, x, j, y], ...]}.
json graph_to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const json& doc);

/// {"cycle": [[part, vertex], ...]}.
json cycle_to_json(const RainbowCycle& cycle);
RainbowCycle cycle_from_json(const json& doc);

/// {"rule", "improving_agent", "pool_size"}; one record per trace line.
json trace_step_to_json(const TraceStep& step);

/// Reads and parses a JSON file; InvalidInputError on I/O or syntax errors.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace efx::cli
