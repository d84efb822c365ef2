#include "efx/cli/io.hpp"

#include <fstream>
#include <sstream>

#include "efx/errors.hpp"

namespace efx::cli {

namespace {

std::size_t read_index(const json& value, const char* what) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw InvalidInputError(std::string(what) + " must be a non-negative integer, got " + value.dump());
  }
  return value.get<std::size_t>();
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InvalidInputError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

GoodSet read_goods(const json& list, const char* what) {
  if (!list.is_array()) throw InvalidInputError(std::string(what) + " must be an array of goods");
  GoodSet goods;
  for (const json& g : list) {
    if (!goods.insert(read_index(g, what))) {
      throw InvalidInputError(std::string(what) + " lists good " + g.dump() + " twice");
    }
  }
  return goods;
}

json write_goods(const GoodSet& goods) { return json(goods.items()); }

}  // namespace

json rational_to_json(const Rational& value) {
  if (value.is_integer() && value.numerator().fits_slong_p()) return json(value.numerator().get_si());
  return json(value.to_string());
}

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(value.get<std::uint64_t>()) : Rational(value.get<std::int64_t>());
  }
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  throw InvalidInputError("expected an integer or a \"p/q\" string, got " + value.dump());
}

json instance_to_json(const Instance& instance) {
  json rows = json::array();
  for (Agent i = 0; i < instance.num_agents(); ++i) {
    json row = json::array();
    for (const Rational& v : instance.row(i)) row.push_back(rational_to_json(v));
    rows.push_back(std::move(row));
  }
  return json{{"num_agents", instance.num_agents()},
              {"num_goods", instance.num_goods()},
              {"epsilon", instance.epsilon().to_string()},
              {"valuations", std::move(rows)}};
}

Instance instance_from_json(const json& doc) {
  const std::size_t n = read_index(require(doc, "num_agents"), "num_agents");
  const std::size_t m = read_index(require(doc, "num_goods"), "num_goods");
  const Rational epsilon = rational_from_json(require(doc, "epsilon"));
  const json& valuations = require(doc, "valuations");
  if (!valuations.is_array()) throw InvalidInputError("valuations must be an array");

  std::vector<Rational> flat;
  flat.reserve(n * m);
  const bool nested = !valuations.empty() && valuations.front().is_array();
  if (nested) {
    if (valuations.size() != n) {
      throw InvalidInputError("expected " + std::to_string(n) + " valuation rows, got " +
                              std::to_string(valuations.size()));
    }
    for (const json& row : valuations) {
      if (!row.is_array() || row.size() != m) {
        throw InvalidInputError("every valuation row needs " + std::to_string(m) + " entries");
      }
      for (const json& v : row) flat.push_back(rational_from_json(v));
    }
  } else {
    for (const json& v : valuations) flat.push_back(rational_from_json(v));
    if (flat.empty() && m > 0) throw InvalidInputError("valuations are missing");
  }
  if (flat.size() != n * m) {
    throw InvalidInputError("expected " + std::to_string(n * m) + " valuations, got " + std::to_string(flat.size()));
  }
  return Instance(n, m, std::move(flat), epsilon);
}

json allocation_to_json(const PartialAllocation& alloc) {
  json bundles = json::array();
  for (const GoodSet& b : alloc.bundles) bundles.push_back(write_goods(b));
  return json{{"bundles", std::move(bundles)}, {"pool", write_goods(alloc.pool)}};
}

PartialAllocation allocation_from_json(const json& doc) {
  const json& bundles = require(doc, "bundles");
  if (!bundles.is_array()) throw InvalidInputError("bundles must be an array");
  PartialAllocation alloc;
  for (const json& b : bundles) alloc.bundles.push_back(read_goods(b, "bundle"));
  alloc.pool = read_goods(require(doc, "pool"), "pool");
  return alloc;
}

json graph_to_json(const GraphDocument& doc) {
  json parts = json::array();
  if (doc.labels) {
    for (const auto& labels : *doc.labels) parts.push_back(labels);
  } else {
    for (std::size_t size : doc.graph.part_sizes()) parts.push_back(size);
  }
  json edges = json::array();
  for (const auto& [from, to] : doc.graph.edges()) edges.push_back({from.part, from.id, to.part, to.id});
  return json{{"parts", std::move(parts)}, {"edges", std::move(edges)}};
}

GraphDocument graph_from_json(const json& doc) {
  const json& parts = require(doc, "parts");
  if (!parts.is_array()) throw InvalidInputError("parts must be an array");
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::string>> labels;
  bool labelled = false;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const json& part = parts[p];
    if (part.is_array()) {
      labelled = true;
      std::vector<std::string> names;
      for (const json& name : part) {
        if (!name.is_string()) throw InvalidInputError("vertex labels must be strings");
        names.push_back(name.get<std::string>());
      }
      sizes.push_back(names.size());
      labels.push_back(std::move(names));
    } else {
      if (labelled) throw InvalidInputError("parts mix sizes and label lists");
      sizes.push_back(read_index(part, "part size"));
    }
    if (labelled && labels.size() != sizes.size()) throw InvalidInputError("parts mix sizes and label lists");
  }

  GraphDocument result{KPartiteDigraph(sizes), std::nullopt};
  if (labelled) result.labels = std::move(labels);
  const json& edges = require(doc, "edges");
  if (!edges.is_array()) throw InvalidInputError("edges must be an array");
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 4) throw InvalidInputError("each edge is [part, vertex, part, vertex]");
    result.graph.add_edge({read_index(e[0], "edge part"), read_index(e[1], "edge vertex")},
                          {read_index(e[2], "edge part"), read_index(e[3], "edge vertex")});
  }
  return result;
}

json cycle_to_json(const RainbowCycle& cycle) {
  json vertices = json::array();
  for (const Vertex& v : cycle.vertices) vertices.push_back({v.part, v.id});
  return json{{"cycle", std::move(vertices)}};
}

RainbowCycle cycle_from_json(const json& doc) {
  const json& list = require(doc, "cycle");
  if (!list.is_array()) throw InvalidInputError("cycle must be an array");
  RainbowCycle cycle;
  for (const json& v : list) {
    if (!v.is_array() || v.size() != 2) throw InvalidInputError("each cycle vertex is [part, vertex]");
    cycle.vertices.push_back({read_index(v[0], "cycle part"), read_index(v[1], "cycle vertex")});
  }
  return cycle;
}

json trace_step_to_json(const TraceStep& step) {
  return json{{"rule", std::string(to_string(step.rule))},
              {"improving_agent", step.improving_agent ? json(*step.improving_agent) : json(nullptr)},
              {"pool_size", step.pool_size}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write " + path);
  out << text;
  if (!out) throw InvalidInputError("failed writing " + path);
}

}  // namespace efx::cli
