#include "efx/demand.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "efx/champion.hpp"
#include "efx/errors.hpp"

namespace efx {

DemandClassification classify_demand(const Instance& instance, const PartialAllocation& alloc,
                                     std::size_t d) {
  check_consistent(instance, alloc);
  if (d == 0) throw InvalidInputError("d must be positive");
  DemandClassification result;
  result.d = d;
  const auto own = own_values(instance, alloc);
  std::vector<Rational> threshold(instance.num_agents());
  for (Agent i = 0; i < instance.num_agents(); ++i) threshold[i] = instance.epsilon() * own[i];

  for (Good g : alloc.pool) {
    std::vector<Agent>& q = result.valuable_to[g];
    for (Agent i = 0; i < instance.num_agents(); ++i) {
      if (instance.value(i, g) > threshold[i]) q.push_back(i);
    }
    if (q.size() > d) {
      result.high_demand.insert(g);
    } else {
      result.low_demand.insert(g);
    }
  }
  return result;
}

bool check_high_demand_bound(const DemandClassification& classification, const Instance& instance) {
  const Rational lhs = Rational(classification.high_demand.size()) * instance.epsilon() *
                       Rational(classification.d);
  return lhs < Rational(2 * instance.num_agents());
}

GroupChampionGraph build_group_champion_graph(const Instance& instance, const PartialAllocation& alloc,
                                              const DemandClassification& classification,
                                              const SourceAssignment& sources) {
  check_consistent(instance, alloc);
  if (sources.source_of.size() != instance.num_agents()) {
    throw PreconditionError("source assignment does not cover every agent");
  }
  GroupChampionGraph gcg;
  std::vector<std::size_t> sizes;
  for (Good g : classification.low_demand) {
    const auto it = classification.valuable_to.find(g);
    if (it == classification.valuable_to.end()) {
      throw PreconditionError("classification lacks the valuing agents of good " + std::to_string(g));
    }
    std::vector<Agent> part;
    for (Agent a : it->second) part.push_back(sources.source_of.at(a));
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    gcg.goods.push_back(g);
    sizes.push_back(part.size());
    gcg.part_sources.push_back(std::move(part));
  }
  gcg.graph = KPartiteDigraph(sizes);
  const std::size_t k = gcg.goods.size();
  if (k < 2) return gcg;

  const auto own = own_values(instance, alloc);
  for (std::size_t gp = 0; gp < k; ++gp) {
    const Good g = gcg.goods[gp];
    const auto& q = classification.valuable_to.at(g);
    // Champion of X_t ∪ {g} for each target source t, computed once.
    std::map<Agent, std::optional<Agent>> champion;
    for (std::size_t hp = 0; hp < k; ++hp) {
      if (hp == gp) continue;
      for (std::size_t id = 0; id < gcg.part_sources[hp].size(); ++id) {
        const Agent t = gcg.part_sources[hp][id];
        auto [slot, fresh] = champion.try_emplace(t);
        if (fresh) {
          try {
            const Agent a = most_envious_agent(instance, own, with_good(alloc.bundles[t], g)).champion;
            if (std::binary_search(q.begin(), q.end(), a)) slot->second = a;
          } catch (const PreconditionError&) {
          }
        }
        if (!slot->second) {
          throw InternalInvariantError("vertex (good " + std::to_string(gcg.goods[hp]) + ", source " +
                                       std::to_string(t) + ") has no in-neighbour from the part of good " +
                                       std::to_string(g));
        }
        const Agent a = *slot->second;
        const auto& from_part = gcg.part_sources[gp];
        const auto pos = std::lower_bound(from_part.begin(), from_part.end(), sources.source_of[a]);
        gcg.graph.add_edge({gp, static_cast<std::size_t>(pos - from_part.begin())}, {hp, id});
        gcg.champion_of[{g, t}] = a;
      }
    }
  }
  return gcg;
}

U3CycleInput rainbow_cycle_to_u3(const GroupChampionGraph& gcg, const RainbowCycle& cycle) {
  if (!verify_rainbow_cycle(gcg.graph, cycle)) {
    throw PreconditionError("input is not a rainbow cycle of the group champion graph");
  }
  std::vector<Vertex> c = cycle.vertices;
  std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  const std::size_t len = c.size();

  for (std::size_t a = 0; a < len; ++a) {
    std::vector<Agent> window{gcg.source_of(c[a])};
    std::size_t next = (a + 1) % len;
    while (next != a) {
      const Agent s = gcg.source_of(c[next]);
      if (std::find(window.begin(), window.end(), s) != window.end()) break;
      window.push_back(s);
      next = (next + 1) % len;
    }
    if (gcg.source_of(c[next]) != window.front()) continue;

    U3CycleInput out;
    const std::size_t w = window.size();
    for (std::size_t p = 0; p < w; ++p) {
      const Vertex here = c[(a + p) % len];
      const Vertex after = c[(a + p + 1) % len];
      const Vertex before = c[(a + p + len - 1) % len];
      out.sources.push_back(gcg.source_of(here));
      out.goods.push_back(gcg.good_of(p == 0 ? c[(a + w - 1) % len] : before));
      const auto it = gcg.champion_of.find({gcg.good_of(here), gcg.source_of(after)});
      if (it == gcg.champion_of.end()) {
        throw InternalInvariantError("cycle edge has no recorded champion");
      }
      out.champions.push_back(it->second);
    }
    return out;
  }
  throw InternalInvariantError("rainbow cycle has no stretch of distinct sources closing on its start");
}

}  // namespace efx
