#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace efx {

/// Vertex `id` of part `part`. Both indices are 0-based.
struct Vertex {
  std::size_t part = 0;
  std::size_t id = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Directed graph whose vertices are split into parts, with no edges inside a
/// part.
class KPartiteDigraph {
 public:
  KPartiteDigraph() = default;
  explicit KPartiteDigraph(std::vector<std::size_t> part_sizes);

  std::size_t num_parts() const { return part_sizes_.size(); }
  std::size_t part_size(std::size_t part) const { return part_sizes_.at(part); }
  const std::vector<std::size_t>& part_sizes() const { return part_sizes_; }
  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t num_edges() const;

  bool contains(Vertex v) const { return v.part < num_parts() && v.id < part_sizes_[v.part]; }

  /// Throws InvalidInputError for unknown endpoints or an intra-part edge.
  /// Adding an existing edge is a no-op.
  void add_edge(Vertex from, Vertex to);
  bool has_edge(Vertex from, Vertex to) const;

  /// Sorted by (part, id).
  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[index(v)]; }
  const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[index(v)]; }

  /// All edges in (from, to) order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const KPartiteDigraph& a, const KPartiteDigraph& b) {
    return a.part_sizes_ == b.part_sizes_ && a.out_ == b.out_;
  }

 private:
  std::size_t index(Vertex v) const;

  std::vector<std::size_t> part_sizes_;
  std::vector<std::size_t> offsets_;  // prefix sums, size num_parts + 1
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Cyclic vertex sequence; the edge from the last vertex back to the first is
/// implied.
struct RainbowCycle {
  std::vector<Vertex> vertices;

  friend bool operator==(const RainbowCycle&, const RainbowCycle&) = default;
};

/// 1-based row-major index of the pair (a, b) in a d x d grid: (a-1)d + b.
/// Throws InvalidInputError unless 1 <= a, b <= d.
std::size_t sigma(std::size_t d, std::size_t a, std::size_t b);

/// Greedy representative subset: walks coordinates in ascending order and, for
/// each coordinate covered by the family, keeps the lowest-indexed covering
/// vector. Result is sorted and covers exactly the family's coordinates.
std::vector<std::size_t> representative_set(const std::vector<std::vector<bool>>& vectors);

/// For every ordered pair of distinct parts (j, i), every vertex of part i has
/// an in-neighbour in part j.
bool verify_cover_condition(const KPartiteDigraph& graph);

/// Length >= 2, every vertex exists, consecutive vertices (cyclically) are
/// joined by edges, and no part repeats.
bool verify_rainbow_cycle(const KPartiteDigraph& graph, const RainbowCycle& cycle);

/// Two-hop reachability through a middle part: bit x*d + y is set when some
/// vertex z of `middle` has (from, x) -> (middle, z) -> (to, y). Each set bit
/// remembers the lowest such z.
struct PathVector {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t middle = 0;
  std::vector<bool> bits;
  std::vector<std::int64_t> via;  // -1 where the bit is clear

  friend bool operator==(const PathVector&, const PathVector&) = default;
};

PathVector path_vector(const KPartiteDigraph& graph, std::size_t d, std::size_t from,
                       std::size_t to, std::size_t middle);

/// Everything the constructive search decided on the way to its cycle.
struct RainbowConstruction {
  RainbowCycle cycle;
  std::size_t pivot_part = 0;                 // the part the backward trace runs through
  std::size_t surviving_candidates = 0;       // candidate parts left after all pairs
  std::vector<std::size_t> trace_parts;       // parts among the first d used by the cycle
  std::vector<std::size_t> bypass_parts;      // replacement part for each pivot visit
};

/// Constructive search for a cycle meeting every part at most once in a graph
/// with more than d^4 + d non-empty parts of size at most d that satisfies the
/// cover condition. Throws InvalidInputError when these preconditions fail and
/// InternalInvariantError if an edge the cover condition promises is missing.
RainbowConstruction construct_rainbow_cycle(const KPartiteDigraph& graph, std::size_t d);

inline RainbowCycle find_rainbow_cycle(const KPartiteDigraph& graph, std::size_t d) {
  return construct_rainbow_cycle(graph, d).cycle;
}

/// Exhaustive DFS for a rainbow cycle. Each cycle is rooted at its lowest
/// part so it is found once. Throws ResourceLimitError after `budget` DFS
/// expansions.
std::optional<RainbowCycle> brute_force_rainbow_cycle(const KPartiteDigraph& graph,
                                                      std::uint64_t budget = 50'000'000);

/// d parts of d vertices with (i,l) -> (j,l) and (j,l) -> (i,(l+1) mod d) for
/// every i < j. Satisfies the cover condition yet has no rainbow cycle.
KPartiteDigraph lower_bound_graph(std::size_t d);

/// Statistics of the exhaustive rainbow-number computation.
struct RainbowNumberReport {
  std::size_t value = 0;
  std::uint64_t graphs_checked = 0;  // cover-condition graphs on d + 1 parts
};

/// Enumerates every cover-condition digraph on d + 1 parts of sizes 1..d,
/// confirms each has a rainbow cycle, and confirms lower_bound_graph(d) has
/// none. Only d in {1, 2} is supported.
RainbowNumberReport brute_force_rainbow_number_report(std::size_t d);

inline std::size_t brute_force_rainbow_number(std::size_t d) {
  return brute_force_rainbow_number_report(d).value;
}

}  // namespace efx
