#pragma once

#include <optional>
#include <vector>

#include "efx/model.hpp"

namespace efx {

/// Digraph on agents with i -> j iff v_i(X_i) < v_i(X_j). Ties are not edges.
class EnvyGraph {
 public:
  explicit EnvyGraph(std::size_t num_agents);

  std::size_t num_agents() const { return out_.size(); }
  void add_edge(Agent from, Agent to);
  bool has_edge(Agent from, Agent to) const;
  /// Sorted ascending.
  const std::vector<Agent>& out_neighbors(Agent a) const { return out_[a]; }
  const std::vector<Agent>& in_neighbors(Agent a) const { return in_[a]; }
  std::size_t num_edges() const;
  bool is_source(Agent a) const { return in_[a].empty(); }

  /// Some directed cycle, or nullopt if acyclic. The search starts from the
  /// lowest agent and follows neighbours in ascending order, so the answer is
  /// reproducible.
  std::optional<std::vector<Agent>> find_cycle() const;
  bool is_acyclic() const { return !find_cycle().has_value(); }

  /// Shortest path from `from` to `to` (inclusive), preferring low agent ids
  /// on ties. nullopt when unreachable.
  std::optional<std::vector<Agent>> shortest_path(Agent from, Agent to) const;
  bool reachable(Agent from, Agent to) const { return shortest_path(from, to).has_value(); }

  friend bool operator==(const EnvyGraph&, const EnvyGraph&) = default;

 private:
  std::vector<std::vector<Agent>> out_;
  std::vector<std::vector<Agent>> in_;
};

/// source_of[a] is an in-degree-0 agent from which a is reachable.
struct SourceAssignment {
  std::vector<Agent> source_of;

  friend bool operator==(const SourceAssignment&, const SourceAssignment&) = default;
};

EnvyGraph build_envy_graph(const Instance& instance, const PartialAllocation& alloc);

/// Rotates bundles backwards along envy cycles until the envy graph is
/// acyclic. Nobody ends up worse off and the pool is untouched.
PartialAllocation eliminate_envy_cycles(const Instance& instance, const PartialAllocation& alloc);

/// Sources claim agents in index order: each agent is assigned the
/// lowest-indexed source that reaches it. Throws PreconditionError on a
/// cyclic graph.
SourceAssignment assign_sources(const EnvyGraph& graph);

}  // namespace efx
