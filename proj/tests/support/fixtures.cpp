#include "fixtures.hpp"

#include "efx/envy.hpp"

namespace efx::testing {

Instance make_instance(const std::vector<std::vector<int>>& rows, const Rational& epsilon) {
  std::vector<std::vector<Rational>> values;
  for (const auto& row : rows) values.emplace_back(row.begin(), row.end());
  return Instance(std::move(values), epsilon);
}

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, int max_value,
                         const Rational& epsilon) {
  std::uniform_int_distribution<int> dist(0, max_value);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < n * m; ++i) values.emplace_back(dist(rng));
  return Instance(n, m, std::move(values), epsilon);
}

PartialAllocation random_allocation(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<std::size_t> dist(0, n);
  std::vector<std::size_t> owner(m);
  for (auto& o : owner) o = dist(rng);
  return PartialAllocation::from_owners(n, owner);
}

PartialAllocation random_efx_allocation(std::mt19937_64& rng, const Instance& instance) {
  PartialAllocation alloc = random_allocation(rng, instance.num_agents(), instance.num_goods());
  for (EfxReport report = verify_partial_efx(instance, alloc); !report.is_efx;
       report = verify_partial_efx(instance, alloc)) {
    const Agent owner = report.violations.front().owner;
    GoodSet& bundle = alloc.bundles[owner];
    Good cheapest = bundle[0];
    for (Good g : bundle) {
      if (instance.value(owner, g) < instance.value(owner, cheapest)) cheapest = g;
    }
    bundle.erase(cheapest);
    alloc.pool.insert(cheapest);
  }
  return eliminate_envy_cycles(instance, alloc);
}

TwoGroups two_groups() {
  //              o_a1 o_a2 o_a3 o_a4 o_b1 o_b2 ga gb
  const std::vector<std::vector<int>> rows = {
      {10, 11, 0, 0, 0, 0, 6, 0},   // a1
      {0, 2, 0, 0, 0, 0, 10, 0},    // a2
      {0, 0, 10, 11, 0, 0, 6, 0},   // a3
      {0, 0, 0, 10, 0, 0, 6, 0},    // a4
      {0, 0, 0, 0, 10, 11, 0, 6},   // b1
      {0, 0, 0, 0, 0, 2, 0, 10},    // b2
  };
  PartialAllocation alloc;
  for (Good g = 0; g < 6; ++g) alloc.bundles.push_back(GoodSet{g});
  alloc.pool = GoodSet{TwoGroups::ga, TwoGroups::gb};
  return {make_instance(rows, Rational(1, 2)), std::move(alloc)};
}

KPartiteDigraph random_cover_graph(std::mt19937_64& rng, std::size_t k, std::size_t d, double extra) {
  std::uniform_int_distribution<std::size_t> size_dist(1, d);
  std::vector<std::size_t> sizes(k);
  for (auto& s : sizes) s = size_dist(rng);
  KPartiteDigraph graph(sizes);
  std::bernoulli_distribution coin(extra);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < sizes[i]; ++v) {
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        std::uniform_int_distribution<std::size_t> pick(0, sizes[j] - 1);
        graph.add_edge({j, pick(rng)}, {i, v});
        for (std::size_t u = 0; u < sizes[j]; ++u) {
          if (coin(rng)) graph.add_edge({j, u}, {i, v});
        }
      }
    }
  }
  return graph;
}

KPartiteDigraph three_part_fixture() {
  KPartiteDigraph g({2, 2, 2});
  const Vertex a1{0, 0}, a2{0, 1}, b1{1, 0}, b2{1, 1}, c1{2, 0}, c2{2, 1};
  for (auto [x, y] : {std::pair{a1, b1}, {b2, a1}, {a2, b2}, {b1, a2},   // a-b four-cycle
                      {b1, c1}, {c2, b1}, {b2, c2}, {c1, b2},              // b-c four-cycle
                      {a1, c1}, {c1, a2}, {a2, c2}, {c2, a1}}) {           // a-c four-cycle
    g.add_edge(x, y);
  }
  return g;
}

}  // namespace efx::testing
