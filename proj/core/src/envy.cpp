#include "efx/envy.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "efx/errors.hpp"

namespace efx {

EnvyGraph::EnvyGraph(std::size_t num_agents) : out_(num_agents), in_(num_agents) {}

void EnvyGraph::add_edge(Agent from, Agent to) {
  if (from >= num_agents() || to >= num_agents()) {
    throw InvalidInputError("envy edge endpoint out of range");
  }
  if (from == to) throw InvalidInputError("envy graph has no self-loops");
  auto& out = out_[from];
  auto it = std::lower_bound(out.begin(), out.end(), to);
  if (it != out.end() && *it == to) return;
  out.insert(it, to);
  auto& in = in_[to];
  in.insert(std::lower_bound(in.begin(), in.end(), from), from);
}

bool EnvyGraph::has_edge(Agent from, Agent to) const {
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::size_t EnvyGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& out : out_) total += out.size();
  return total;
}

std::optional<std::vector<Agent>> EnvyGraph::find_cycle() const {
  enum class Mark { kWhite, kGrey, kBlack };
  const std::size_t n = num_agents();
  std::vector<Mark> mark(n, Mark::kWhite);
  std::vector<Agent> parent(n, n);
  // Explicit stack of (vertex, next out-neighbour position).
  std::vector<std::pair<Agent, std::size_t>> stack;
  for (Agent root = 0; root < n; ++root) {
    if (mark[root] != Mark::kWhite) continue;
    stack.push_back({root, 0});
    mark[root] = Mark::kGrey;
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      if (pos == out_[v].size()) {
        mark[v] = Mark::kBlack;
        stack.pop_back();
        continue;
      }
      const Agent w = out_[v][pos++];
      if (mark[w] == Mark::kGrey) {
        std::vector<Agent> cycle;
        for (Agent x = v; x != w; x = parent[x]) cycle.push_back(x);
        cycle.push_back(w);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (mark[w] == Mark::kWhite) {
        parent[w] = v;
        mark[w] = Mark::kGrey;
        stack.push_back({w, 0});
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Agent>> EnvyGraph::shortest_path(Agent from, Agent to) const {
  const std::size_t n = num_agents();
  std::vector<Agent> parent(n, n);
  std::vector<bool> seen(n, false);
  std::deque<Agent> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const Agent v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (Agent w : out_[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<Agent> path;
  for (Agent x = to; x != from; x = parent[x]) path.push_back(x);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

EnvyGraph build_envy_graph(const Instance& instance, const PartialAllocation& alloc) {
  check_consistent(instance, alloc);
  const std::size_t n = instance.num_agents();
  EnvyGraph graph(n);
  const auto own = own_values(instance, alloc);
  for (Agent i = 0; i < n; ++i) {
    for (Agent j = 0; j < n; ++j) {
      if (i != j && own[i] < bundle_value(instance, i, alloc.bundles[j])) graph.add_edge(i, j);
    }
  }
  return graph;
}

PartialAllocation eliminate_envy_cycles(const Instance& instance, const PartialAllocation& alloc) {
  PartialAllocation current = alloc;
  // Each rotation strictly increases the values of the agents on the cycle
  // and leaves everyone else alone, so this terminates.
  while (true) {
    const EnvyGraph graph = build_envy_graph(instance, current);
    const auto cycle = graph.find_cycle();
    if (!cycle) return current;
    const auto& c = *cycle;
    std::vector<GoodSet> taken;
    taken.reserve(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) taken.push_back(current.bundles[c[(k + 1) % c.size()]]);
    for (std::size_t k = 0; k < c.size(); ++k) current.bundles[c[k]] = std::move(taken[k]);
  }
}

SourceAssignment assign_sources(const EnvyGraph& graph) {
  if (!graph.is_acyclic()) throw PreconditionError("source assignment needs an acyclic envy graph");
  const std::size_t n = graph.num_agents();
  SourceAssignment result;
  result.source_of.assign(n, n);
  for (Agent s = 0; s < n; ++s) {
    if (!graph.is_source(s)) continue;
    std::deque<Agent> queue{s};
    std::vector<bool> seen(n, false);
    seen[s] = true;
    while (!queue.empty()) {
      const Agent v = queue.front();
      queue.pop_front();
      if (result.source_of[v] == n) result.source_of[v] = s;
      for (Agent w : graph.out_neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  for (Agent a = 0; a < n; ++a) {
    if (result.source_of[a] == n) {
      throw InternalInvariantError("agent " + std::to_string(a) + " reachable from no source");
    }
  }
  return result;
}

}  // namespace efx
