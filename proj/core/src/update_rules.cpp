#include "efx/update_rules.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "efx/champion.hpp"
#include "efx/envy.hpp"
#include "efx/errors.hpp"

namespace efx {

std::string_view to_string(RuleTag tag) {
  switch (tag) {
    case RuleTag::kCycleElimination:
      return "cycle-elim";
    case RuleTag::kU1:
      return "U1";
    case RuleTag::kU2:
      return "U2";
    case RuleTag::kU3:
      return "U3";
  }
  return "?";
}

StepOutcome try_u1(const Instance& instance, const PartialAllocation& alloc) {
  check_consistent(instance, alloc);
  StepOutcome outcome{false, alloc, RuleTag::kU1, std::nullopt};
  if (alloc.pool.empty()) return outcome;

  const std::size_t n = instance.num_agents();
  const Rational& keep = instance.keep_factor();
  const auto own = own_values(instance, alloc);
  const EnvyGraph graph = build_envy_graph(instance, alloc);

  std::vector<Rational> whole(n);
  std::vector<std::optional<Rational>> cheapest(n);
  for (Agent s = 0; s < n; ++s) {
    if (!graph.is_source(s)) continue;
    const GoodSet& bundle = alloc.bundles[s];
    for (Agent i = 0; i < n; ++i) {
      whole[i] = Rational();
      cheapest[i].reset();
      for (Good h : bundle) {
        const Rational& v = instance.value(i, h);
        whole[i] += v;
        if (!cheapest[i] || v < *cheapest[i]) cheapest[i] = v;
      }
    }
    for (Good g : alloc.pool) {
      // X_s ∪ {g} has at least two goods only when X_s is non-empty; a
      // singleton has no proper subset worth envying.
      bool strongly_envied = false;
      if (!bundle.empty()) {
        for (Agent i = 0; i < n && !strongly_envied; ++i) {
          const Rational& vg = instance.value(i, g);
          const Rational& drop = std::min(*cheapest[i], vg);
          strongly_envied = own[i] < keep * (whole[i] + vg - drop);
        }
      }
      if (!strongly_envied) {
        outcome.applied = true;
        outcome.allocation.bundles[s].insert(g);
        outcome.allocation.pool.erase(g);
        outcome.improving_agent = s;
        return outcome;
      }
    }
  }
  return outcome;
}

StepOutcome try_u2(const Instance& instance, const PartialAllocation& alloc) {
  check_consistent(instance, alloc);
  StepOutcome outcome{false, alloc, RuleTag::kU2, std::nullopt};
  const auto own = own_values(instance, alloc);
  bool any = false;
  for (Agent i = 0; i < instance.num_agents() && !any; ++i) {
    any = own[i] < instance.keep_factor() * bundle_value(instance, i, alloc.pool);
  }
  if (!any) return outcome;

  const Witness w = most_envious_agent(instance, own, alloc.pool);
  PartialAllocation& next = outcome.allocation;
  next.pool = set_union(alloc.bundles[w.champion], set_difference(alloc.pool, w.witness_set));
  next.bundles[w.champion] = w.witness_set;
  outcome.applied = true;
  outcome.improving_agent = w.champion;
  return outcome;
}

namespace {

// One link of the working cycle: an envy path from the source of original
// position `source_pos` to the champion of original position `champion_pos`.
struct Link {
  std::size_t source_pos;
  std::size_t champion_pos;
  std::vector<Agent> path;
};

// Replaces links until no two envy paths share an agent. Each merge drops at
// least one link, so the loop runs fewer than `links.size()` times.
std::vector<Link> make_paths_disjoint(std::vector<Link> links, std::size_t num_agents) {
  while (links.size() > 1) {
    std::vector<std::size_t> owner(num_agents, links.size());
    bool clash = false;
    for (std::size_t p = 0; p < links.size() && !clash; ++p) {
      for (Agent a : links[p].path) {
        if (owner[a] != links.size()) {
          clash = true;
          break;
        }
        owner[a] = p;
      }
    }
    if (!clash) break;

    // Earliest link whose path meets another one, cut at the first shared agent.
    std::vector<std::size_t> count(num_agents, 0);
    for (const auto& link : links) {
      for (Agent a : link.path) ++count[a];
    }
    std::size_t p = 0;
    std::size_t cut = 0;
    bool found = false;
    for (p = 0; p < links.size() && !found; ++p) {
      for (cut = 0; cut < links[p].path.size(); ++cut) {
        if (count[links[p].path[cut]] > 1) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    const Agent x = links[p].path[cut];
    std::size_t q = 0;
    std::size_t join = 0;
    for (std::size_t step = 1; step < links.size(); ++step) {
      q = (p + step) % links.size();
      auto it = std::find(links[q].path.begin(), links[q].path.end(), x);
      if (it != links[q].path.end()) {
        join = static_cast<std::size_t>(it - links[q].path.begin());
        break;
      }
    }

    Link merged{links[p].source_pos, links[q].champion_pos, {}};
    merged.path.assign(links[p].path.begin(), links[p].path.begin() + static_cast<long>(cut));
    merged.path.insert(merged.path.end(), links[q].path.begin() + static_cast<long>(join),
                       links[q].path.end());

    std::vector<Link> next{std::move(merged)};
    for (std::size_t k = (q + 1) % links.size(); k != p; k = (k + 1) % links.size()) {
      next.push_back(std::move(links[k]));
    }
    links = std::move(next);
  }
  return links;
}

}  // namespace

StepOutcome try_u3(const Instance& instance, const PartialAllocation& alloc,
                   const U3CycleInput& cycle) {
  check_consistent(instance, alloc);
  const std::size_t len = cycle.sources.size();
  const std::size_t n = instance.num_agents();
  if (len == 0 || cycle.goods.size() != len || cycle.champions.size() != len) {
    throw PreconditionError("U3 cycle needs equally many (>= 1) sources, goods and champions");
  }
  auto distinct = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(cycle.sources) || !distinct(cycle.goods) || !distinct(cycle.champions)) {
    throw PreconditionError("U3 cycle sources, goods and champions must each be distinct");
  }

  const EnvyGraph graph = build_envy_graph(instance, alloc);
  const auto own = own_values(instance, alloc);

  std::vector<Link> links;
  std::vector<GoodSet> witness(len);  // witness[i] is cut from X_{s_i} ∪ {g_i}
  for (std::size_t i = 0; i < len; ++i) {
    const Agent s = cycle.sources[i];
    const Agent t = cycle.champions[i];
    if (s >= n || t >= n) throw PreconditionError("U3 agent index out of range");
    if (!graph.is_source(s)) {
      throw PreconditionError("U3 agent " + std::to_string(s) + " is not a source of the envy graph");
    }
    if (!alloc.pool.contains(cycle.goods[i])) {
      throw PreconditionError("U3 good " + std::to_string(cycle.goods[i]) + " is not in the pool");
    }
    auto path = graph.shortest_path(s, t);
    if (!path) {
      throw PreconditionError("U3 champion " + std::to_string(t) + " is not reachable from source " +
                              std::to_string(s));
    }
    links.push_back({i, i, std::move(*path)});
  }
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t next = (i + 1) % len;
    const GoodSet target = with_good(alloc.bundles[cycle.sources[next]], cycle.goods[next]);
    Witness w;
    try {
      w = most_envious_agent(instance, own, target);
    } catch (const PreconditionError&) {
      throw PreconditionError("U3 target of position " + std::to_string(next) +
                              " is not heavily envied by anybody");
    }
    if (w.champion != cycle.champions[i]) {
      throw PreconditionError("U3 agent " + std::to_string(cycle.champions[i]) +
                              " is not the champion of position " + std::to_string(next) +
                              " (champion is " + std::to_string(w.champion) + ")");
    }
    witness[next] = std::move(w.witness_set);
  }

  links = make_paths_disjoint(std::move(links), n);

  StepOutcome outcome{true, alloc, RuleTag::kU3, cycle.champions[links.front().champion_pos]};
  PartialAllocation& next = outcome.allocation;
  for (const Link& link : links) {
    const auto& path = link.path;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) next.bundles[path[k]] = alloc.bundles[path[k + 1]];
    const std::size_t fed = (link.champion_pos + 1) % len;
    const Agent fed_source = cycle.sources[fed];
    const Good g = cycle.goods[fed];
    const GoodSet whole = with_good(alloc.bundles[fed_source], g);
    next.bundles[path.back()] = witness[fed];
    next.pool.erase(g);
    for (Good leftover : set_difference(whole, witness[fed])) next.pool.insert(leftover);
  }
  try {
    check_consistent(instance, next);
  } catch (const InvalidInputError& e) {
    throw InternalInvariantError(std::string("U3 produced an inconsistent allocation: ") + e.what());
  }
  return outcome;
}

}  // namespace efx
