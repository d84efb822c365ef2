#include "efx/rainbow.hpp"

#include <algorithm>
#include <string>

#include "efx/errors.hpp"

namespace efx {

namespace {

std::string describe(Vertex v) {
  return "(" + std::to_string(v.part) + "," + std::to_string(v.id) + ")";
}

}  // namespace

KPartiteDigraph::KPartiteDigraph(std::vector<std::size_t> part_sizes)
    : part_sizes_(std::move(part_sizes)) {
  offsets_.assign(part_sizes_.size() + 1, 0);
  for (std::size_t p = 0; p < part_sizes_.size(); ++p) offsets_[p + 1] = offsets_[p] + part_sizes_[p];
  out_.resize(offsets_.back());
  in_.resize(offsets_.back());
}

std::size_t KPartiteDigraph::index(Vertex v) const {
  if (!contains(v)) throw InvalidInputError("vertex " + describe(v) + " is not in the graph");
  return offsets_[v.part] + v.id;
}

std::size_t KPartiteDigraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& list : out_) total += list.size();
  return total;
}

void KPartiteDigraph::add_edge(Vertex from, Vertex to) {
  const std::size_t a = index(from);
  const std::size_t b = index(to);
  if (from.part == to.part) {
    throw InvalidInputError("edge " + describe(from) + " -> " + describe(to) + " stays inside a part");
  }
  auto& out = out_[a];
  auto it = std::lower_bound(out.begin(), out.end(), to);
  if (it != out.end() && *it == to) return;
  out.insert(it, to);
  auto& in = in_[b];
  in.insert(std::lower_bound(in.begin(), in.end(), from), from);
}

bool KPartiteDigraph::has_edge(Vertex from, Vertex to) const {
  if (!contains(from) || !contains(to)) return false;
  const auto& out = out_[index(from)];
  return std::binary_search(out.begin(), out.end(), to);
}

std::vector<std::pair<Vertex, Vertex>> KPartiteDigraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  for (std::size_t p = 0; p < num_parts(); ++p) {
    for (std::size_t v = 0; v < part_sizes_[p]; ++v) {
      const Vertex from{p, v};
      for (Vertex to : out_neighbors(from)) result.emplace_back(from, to);
    }
  }
  return result;
}

std::size_t sigma(std::size_t d, std::size_t a, std::size_t b) {
  if (a < 1 || a > d || b < 1 || b > d) {
    throw InvalidInputError("sigma needs 1 <= a, b <= d, got a=" + std::to_string(a) +
                            " b=" + std::to_string(b) + " d=" + std::to_string(d));
  }
  return (a - 1) * d + b;
}

std::vector<std::size_t> representative_set(const std::vector<std::vector<bool>>& vectors) {
  std::size_t dims = 0;
  for (const auto& v : vectors) dims = std::max(dims, v.size());
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < dims; ++c) {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (c < vectors[i].size() && vectors[i][c]) {
        chosen.push_back(i);
        break;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  return chosen;
}

bool verify_cover_condition(const KPartiteDigraph& graph) {
  const std::size_t k = graph.num_parts();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < graph.part_size(i); ++v) {
      std::vector<bool> fed(k, false);
      for (Vertex u : graph.in_neighbors({i, v})) fed[u.part] = true;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i && !fed[j]) return false;
      }
    }
  }
  return true;
}

bool verify_rainbow_cycle(const KPartiteDigraph& graph, const RainbowCycle& cycle) {
  const auto& vs = cycle.vertices;
  if (vs.size() < 2) return false;
  std::vector<bool> seen(graph.num_parts(), false);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!graph.contains(vs[i]) || seen[vs[i].part]) return false;
    seen[vs[i].part] = true;
    if (!graph.has_edge(vs[i], vs[(i + 1) % vs.size()])) return false;
  }
  return true;
}

PathVector path_vector(const KPartiteDigraph& graph, std::size_t d, std::size_t from,
                       std::size_t to, std::size_t middle) {
  PathVector pv{from, to, middle, std::vector<bool>(d * d, false), std::vector<std::int64_t>(d * d, -1)};
  for (std::size_t z = 0; z < graph.part_size(middle); ++z) {
    const Vertex mid{middle, z};
    for (Vertex a : graph.in_neighbors(mid)) {
      if (a.part != from || a.id >= d) continue;
      for (Vertex b : graph.out_neighbors(mid)) {
        if (b.part != to || b.id >= d) continue;
        const std::size_t bit = a.id * d + b.id;
        if (!pv.bits[bit]) {
          pv.bits[bit] = true;
          pv.via[bit] = static_cast<std::int64_t>(z);
        }
      }
    }
  }
  return pv;
}

RainbowConstruction construct_rainbow_cycle(const KPartiteDigraph& graph, std::size_t d) {
  const std::size_t k = graph.num_parts();
  if (d == 0) throw InvalidInputError("d must be positive");
  const std::size_t d2 = d * d;
  if (k <= d2 * d2 + d) {
    throw InvalidInputError("rainbow search needs more than d^4 + d = " + std::to_string(d2 * d2 + d) +
                            " parts, got " + std::to_string(k));
  }
  for (std::size_t p = 0; p < k; ++p) {
    if (graph.part_size(p) == 0 || graph.part_size(p) > d) {
      throw InvalidInputError("part " + std::to_string(p) + " has " + std::to_string(graph.part_size(p)) +
                              " vertices, expected 1.." + std::to_string(d));
    }
  }
  if (!verify_cover_condition(graph)) throw InvalidInputError("graph violates the cover condition");

  // cover[i][j] maps a grid coordinate to the representative part covering it
  // for the pair (i, j); cover_via keeps the middle vertex of that path.
  std::vector<std::vector<std::vector<std::int64_t>>> cover(
      d, std::vector<std::vector<std::int64_t>>(d, std::vector<std::int64_t>(d2, -1)));
  std::vector<std::vector<std::vector<std::int64_t>>> cover_via = cover;

  std::vector<std::size_t> candidates;
  for (std::size_t l = d; l < k; ++l) candidates.push_back(l);

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<PathVector> family;
      std::vector<std::vector<bool>> bits;
      family.reserve(candidates.size());
      for (std::size_t l : candidates) {
        family.push_back(path_vector(graph, d, i, j, l));
        bits.push_back(family.back().bits);
      }
      const auto reps = representative_set(bits);
      for (std::size_t c = 0; c < d2; ++c) {
        for (std::size_t r : reps) {
          if (family[r].bits[c]) {
            cover[i][j][c] = static_cast<std::int64_t>(family[r].middle);
            cover_via[i][j][c] = family[r].via[c];
            break;
          }
        }
      }
      std::vector<std::size_t> kept;
      for (std::size_t r = 0, next = 0; r < candidates.size(); ++r) {
        if (next < reps.size() && reps[next] == r) {
          ++next;
        } else {
          kept.push_back(candidates[r]);
        }
      }
      candidates = std::move(kept);
    }
  }
  if (candidates.empty()) throw InternalInvariantError("no candidate part survived the pair sweep");

  RainbowConstruction result;
  result.surviving_candidates = candidates.size();
  const std::size_t pivot = candidates.front();
  result.pivot_part = pivot;

  auto first_in_neighbor = [&](Vertex v, std::size_t part) {
    for (Vertex u : graph.in_neighbors(v)) {
      if (u.part == part) return u.id;
    }
    throw InternalInvariantError("vertex " + describe(v) + " has no in-neighbour in part " +
                                 std::to_string(part));
  };

  // Backward trace: w[q-1] -> (q-1, v[q]) -> w[q] for q = d..1, with the
  // trace's q-th part being 0-based part q-1.
  std::vector<std::size_t> w(d + 1);
  std::vector<std::size_t> v(d + 1);
  w[d] = 0;
  for (std::size_t q = d; q >= 1; --q) {
    v[q] = first_in_neighbor({pivot, w[q]}, q - 1);
    w[q - 1] = first_in_neighbor({q - 1, v[q]}, pivot);
  }

  // Pigeonhole on the d + 1 pivot vertices w[0..d] in a part of size <= d.
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t b = 1; b <= d && hi == 0; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (w[a] == w[b]) {
        lo = a;
        hi = b;
        break;
      }
    }
  }
  if (hi == 0) throw InternalInvariantError("backward trace produced no repeated pivot vertex");

  // Trace positions lo+1..hi; each pivot visit after position q leads to the
  // next position (wrapping to lo+1) and is replaced by a bypass part.
  for (std::size_t q = lo + 1; q <= hi; ++q) {
    const std::size_t next = q == hi ? lo + 1 : q + 1;
    const std::size_t coord = v[q] * d + v[next];
    const std::int64_t part = cover[q - 1][next - 1][coord];
    if (part < 0) {
      throw InternalInvariantError("no representative part for pair (" + std::to_string(q - 1) + "," +
                                   std::to_string(next - 1) + ")");
    }
    const auto mid = static_cast<std::size_t>(cover_via[q - 1][next - 1][coord]);
    result.trace_parts.push_back(q - 1);
    result.bypass_parts.push_back(static_cast<std::size_t>(part));
    result.cycle.vertices.push_back({q - 1, v[q]});
    result.cycle.vertices.push_back({static_cast<std::size_t>(part), mid});
  }

  if (!verify_rainbow_cycle(graph, result.cycle)) {
    throw InternalInvariantError("constructed cycle is not a rainbow cycle");
  }
  return result;
}

namespace {

class CycleSearch {
 public:
  CycleSearch(const KPartiteDigraph& graph, std::uint64_t budget)
      : graph_(graph), budget_(budget), used_(graph.num_parts(), false) {}

  std::optional<RainbowCycle> run() {
    for (std::size_t p = 0; p < graph_.num_parts(); ++p) {
      for (std::size_t id = 0; id < graph_.part_size(p); ++id) {
        start_ = {p, id};
        path_.assign(1, start_);
        used_[p] = true;
        const bool found = extend(start_);
        used_[p] = false;
        if (found) return RainbowCycle{path_};
      }
    }
    return std::nullopt;
  }

 private:
  bool extend(Vertex at) {
    if (++expansions_ > budget_) {
      throw ResourceLimitError("rainbow cycle search exceeded " + std::to_string(budget_) + " expansions");
    }
    for (Vertex next : graph_.out_neighbors(at)) {
      if (next == start_) {
        if (path_.size() >= 2) return true;
        continue;
      }
      if (next.part <= start_.part || used_[next.part]) continue;
      used_[next.part] = true;
      path_.push_back(next);
      if (extend(next)) return true;
      path_.pop_back();
      used_[next.part] = false;
    }
    return false;
  }

  const KPartiteDigraph& graph_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  std::vector<bool> used_;
  std::vector<Vertex> path_;
  Vertex start_;
};

}  // namespace

std::optional<RainbowCycle> brute_force_rainbow_cycle(const KPartiteDigraph& graph, std::uint64_t budget) {
  return CycleSearch(graph, budget).run();
}

KPartiteDigraph lower_bound_graph(std::size_t d) {
  if (d == 0) throw InvalidInputError("d must be positive");
  KPartiteDigraph graph(std::vector<std::size_t>(d, d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t l = 0; l < d; ++l) {
        graph.add_edge({i, l}, {j, l});
        graph.add_edge({j, l}, {i, (l + 1) % d});
      }
    }
  }
  return graph;
}

namespace {

// One in-neighbour choice: `target` picks a non-empty subset (bitmask) of the
// vertices of part `source_part`.
struct Slot {
  Vertex target;
  std::size_t source_part;
  std::uint32_t limit;  // masks range over 1..limit
};

std::uint64_t check_all_cover_graphs(const std::vector<std::size_t>& sizes) {
  const std::size_t k = sizes.size();
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < sizes[i]; ++v) {
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) slots.push_back({{i, v}, j, (1u << sizes[j]) - 1});
      }
    }
  }
  std::vector<std::uint32_t> mask(slots.size(), 1);
  std::uint64_t checked = 0;
  while (true) {
    KPartiteDigraph graph(sizes);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      for (std::size_t u = 0; u < sizes[slots[s].source_part]; ++u) {
        if (mask[s] & (1u << u)) graph.add_edge({slots[s].source_part, u}, slots[s].target);
      }
    }
    ++checked;
    if (!brute_force_rainbow_cycle(graph)) {
      throw InternalInvariantError("found a cover-condition graph on " + std::to_string(k) +
                                   " parts without a rainbow cycle");
    }
    std::size_t s = 0;
    while (s < slots.size() && mask[s] == slots[s].limit) mask[s++] = 1;
    if (s == slots.size()) break;
    ++mask[s];
  }
  return checked;
}

}  // namespace

RainbowNumberReport brute_force_rainbow_number_report(std::size_t d) {
  if (d < 1 || d > 2) {
    throw UnsupportedInputError("exhaustive rainbow number is only supported for d in {1, 2}, got " +
                                std::to_string(d));
  }
  RainbowNumberReport report;
  const std::size_t k = d + 1;
  std::vector<std::size_t> sizes(k, 1);
  while (true) {
    report.graphs_checked += check_all_cover_graphs(sizes);
    std::size_t p = 0;
    while (p < k && sizes[p] == d) sizes[p++] = 1;
    if (p == k) break;
    ++sizes[p];
  }

  const KPartiteDigraph witness = lower_bound_graph(d);
  if (!verify_cover_condition(witness) || brute_force_rainbow_cycle(witness)) {
    throw InternalInvariantError("lower-bound witness for d=" + std::to_string(d) + " is not valid");
  }
  report.value = d;
  return report;
}

}  // namespace efx
