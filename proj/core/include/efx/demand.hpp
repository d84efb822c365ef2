#pragma once

#include <map>
#include <utility>
#include <vector>

#include "efx/envy.hpp"
#include "efx/model.hpp"
#include "efx/rainbow.hpp"
#include "efx/update_rules.hpp"

namespace efx {

/// Split of the pool by how many agents find each good valuable, i.e. worth
/// more than eps times their own bundle.
struct DemandClassification {
  std::size_t d = 1;
  GoodSet high_demand;  // valuable to at least d + 1 agents
  GoodSet low_demand;   // valuable to at most d agents
  std::map<Good, std::vector<Agent>> valuable_to;  // every pool good, agents ascending
};

DemandClassification classify_demand(const Instance& instance, const PartialAllocation& alloc,
                                     std::size_t d);

/// |high_demand| < 2n / (eps d), evaluated exactly.
bool check_high_demand_bound(const DemandClassification& classification, const Instance& instance);

/// One part per low-demand good (in good order); the vertices of a part are
/// the distinct sources assigned to the agents valuing that good. Edge
/// (g, s(a)) -> (h, s(b)) exists when a is the champion of X_{s(b)} ∪ {g}.
struct GroupChampionGraph {
  std::vector<Good> goods;                        // part index -> good
  std::vector<std::vector<Agent>> part_sources;   // part index -> vertex id -> source
  KPartiteDigraph graph;
  /// (g, target source) -> champion of X_{target} ∪ {g}, for every edge added.
  std::map<std::pair<Good, Agent>, Agent> champion_of;

  Good good_of(Vertex v) const { return goods.at(v.part); }
  Agent source_of(Vertex v) const { return part_sources.at(v.part).at(v.id); }
};

/// Requires an acyclic envy graph where neither U1 nor U2 applies. Throws
/// InternalInvariantError naming the offending (good, source) pair if some
/// vertex misses an in-neighbour from another part.
GroupChampionGraph build_group_champion_graph(const Instance& instance, const PartialAllocation& alloc,
                                              const DemandClassification& classification,
                                              const SourceAssignment& sources);

/// Picks a stretch of the cycle with pairwise distinct sources whose
/// successor brings back the stretch's first source, and turns it into a U3
/// input. The scan starts at the cycle's smallest vertex and tries start
/// positions in order. Throws PreconditionError for a cycle that is not a
/// rainbow cycle of `gcg`.
U3CycleInput rainbow_cycle_to_u3(const GroupChampionGraph& gcg, const RainbowCycle& cycle);

}  // namespace efx
