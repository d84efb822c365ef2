#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "efx/model.hpp"
#include "efx/rainbow.hpp"

namespace efx::testing {

Instance make_instance(const std::vector<std::vector<int>>& rows, const Rational& epsilon);

/// Integer valuations uniform in [0, max_value].
Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, int max_value,
                         const Rational& epsilon);

/// Every good independently goes to a uniform agent or the pool.
PartialAllocation random_allocation(std::mt19937_64& rng, std::size_t n, std::size_t m);

/// Random allocation repaired into a (1-eps)-EFX one with an acyclic envy
/// graph: owners of violated bundles drop their cheapest good to the pool.
PartialAllocation random_efx_allocation(std::mt19937_64& rng, const Instance& instance);

/// Six agents a1..a4, b1, b2 each holding one good, plus pool goods ga (6)
/// and gb (7); the demand example with epsilon 1/2 and d = 4.
struct TwoGroups {
  Instance instance;
  PartialAllocation allocation;
  static constexpr Agent a1 = 0, a2 = 1, a3 = 2, a4 = 3, b1 = 4, b2 = 5;
  static constexpr Good ga = 6, gb = 7;
};
TwoGroups two_groups();

/// Random k-partite digraph with part sizes in [1, d]: every vertex gets one
/// random in-neighbour from each other part, then every remaining cross edge
/// is added with probability `extra`.
KPartiteDigraph random_cover_graph(std::mt19937_64& rng, std::size_t k, std::size_t d, double extra);

/// Three parts of two vertices (a1 a2 | b1 b2 | c1 c2): two alternating
/// four-cycles between consecutive parts and a third with a1 -> c1.
KPartiteDigraph three_part_fixture();

}  // namespace efx::testing
