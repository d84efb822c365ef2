#include "efx/demand.hpp"

#include <gtest/gtest.h>

#include "efx/errors.hpp"
#include "fixtures.hpp"

namespace efx {
namespace {

using testing::make_instance;

TEST(ClassifyDemandTest, WorthlessGoodIsLowDemandWithNoTakers) {
  const Instance instance = make_instance({{3, 0}, {3, 0}}, Rational(1, 2));
  const auto c = classify_demand(instance, {{GoodSet{0}, GoodSet{}}, GoodSet{1}}, 1);
  EXPECT_TRUE(c.low_demand.contains(1));
  EXPECT_TRUE(c.valuable_to.at(1).empty());
}

TEST(ClassifyDemandTest, ThresholdIsStrict) {
  // Each agent owns a good worth 2; g is good 3.
  const PartialAllocation alloc{{GoodSet{0}, GoodSet{1}, GoodSet{2}}, GoodSet{3}};
  const Instance high = make_instance({{2, 0, 0, 2}, {0, 2, 0, 2}, {0, 0, 2, 0}}, Rational(1, 2));
  const auto c1 = classify_demand(high, alloc, 1);
  EXPECT_TRUE(c1.high_demand.contains(3));
  EXPECT_EQ(c1.valuable_to.at(3), (std::vector<Agent>{0, 1}));

  const Instance low = make_instance({{2, 0, 0, 2}, {0, 2, 0, 1}, {0, 0, 2, 0}}, Rational(1, 2));
  const auto c2 = classify_demand(low, alloc, 1);
  EXPECT_TRUE(c2.low_demand.contains(3));
  EXPECT_EQ(c2.valuable_to.at(3), (std::vector<Agent>{0}));
}

TEST(ClassifyDemandTest, PartitionsThePool) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t m = rng() % 15;
    const Instance instance = testing::random_instance(rng, n, m, 10, Rational(1, 4));
    const PartialAllocation alloc = testing::random_allocation(rng, n, m);
    const std::size_t d = 1 + rng() % 3;
    const auto c = classify_demand(instance, alloc, d);
    ASSERT_EQ(set_union(c.high_demand, c.low_demand), alloc.pool);
    ASSERT_EQ(c.high_demand.size() + c.low_demand.size(), alloc.pool.size());
    for (Good g : alloc.pool) ASSERT_EQ(c.valuable_to.at(g).size() > d, c.high_demand.contains(g));
  }
}

TEST(HighDemandBoundTest, Examples) {
  const Instance instance = make_instance({{1}, {1}, {1}, {1}}, Rational(1, 2));
  DemandClassification c;
  c.d = 2;
  EXPECT_TRUE(check_high_demand_bound(c, instance));
  for (Good g = 0; g < 7; ++g) c.high_demand.insert(g);
  EXPECT_TRUE(check_high_demand_bound(c, instance));  // 7 < 8
  c.high_demand.insert(7);
  EXPECT_FALSE(check_high_demand_bound(c, instance));  // 8 < 8 fails
}

TEST(GroupChampionGraphTest, TwoGroups) {
  const auto groups = testing::two_groups();
  const auto c = classify_demand(groups.instance, groups.allocation, 4);
  EXPECT_EQ(c.low_demand, (GoodSet{groups.ga, groups.gb}));
  EXPECT_EQ(c.valuable_to.at(groups.ga), (std::vector<Agent>{groups.a1, groups.a2, groups.a3, groups.a4}));
  EXPECT_EQ(c.valuable_to.at(groups.gb), (std::vector<Agent>{groups.b1, groups.b2}));

  const auto sources = assign_sources(build_envy_graph(groups.instance, groups.allocation));
  const auto gcg = build_group_champion_graph(groups.instance, groups.allocation, c, sources);
  ASSERT_EQ(gcg.goods, (std::vector<Good>{groups.ga, groups.gb}));
  EXPECT_EQ(gcg.part_sources[0], (std::vector<Agent>{groups.a1, groups.a3}));
  EXPECT_EQ(gcg.part_sources[1], (std::vector<Agent>{groups.b1}));

  const Vertex a1{0, 0}, a3{0, 1}, b1{1, 0};
  EXPECT_TRUE(gcg.graph.has_edge(a1, b1));  // a2 champions X_b1 ∪ {ga}; s(a2) = a1
  EXPECT_TRUE(gcg.graph.has_edge(b1, a1));  // b2 champions X_a1 ∪ {gb}; s(b2) = b1
  EXPECT_TRUE(gcg.graph.has_edge(b1, a3));
  EXPECT_EQ(gcg.graph.num_edges(), 3u);
  EXPECT_TRUE(verify_cover_condition(gcg.graph));
  EXPECT_EQ(gcg.champion_of.at({groups.ga, groups.b1}), groups.a2);
  EXPECT_EQ(gcg.champion_of.at({groups.gb, groups.a3}), groups.b2);
}

TEST(GroupChampionGraphTest, SingleGoodHasNoEdges) {
  const Instance instance = make_instance({{4, 10}}, Rational(1, 2));
  const PartialAllocation alloc{{GoodSet{0}}, GoodSet{1}};
  const auto c = classify_demand(instance, alloc, 1);
  const auto gcg = build_group_champion_graph(instance, alloc, c, {{0}});
  EXPECT_EQ(gcg.graph.num_parts(), 1u);
  EXPECT_EQ(gcg.graph.num_edges(), 0u);
}

// Agents 0 and 1 own o0, o1; agent 0 craves g, agent 1 craves h.
Instance mutual_instance() {
  //                                o0 o1  g   h
  return make_instance({{4, 0, 10, 0}, {0, 4, 0, 10}}, Rational(1, 2));
}

TEST(GroupChampionGraphTest, MutualChampionsFormTwoCycleConsumedByU3) {
  const Instance instance = mutual_instance();
  const PartialAllocation alloc{{GoodSet{0}, GoodSet{1}}, GoodSet{2, 3}};
  const auto c = classify_demand(instance, alloc, 1);
  const auto gcg = build_group_champion_graph(instance, alloc, c, {{0, 1}});
  EXPECT_TRUE(gcg.graph.has_edge({0, 0}, {1, 0}));
  EXPECT_TRUE(gcg.graph.has_edge({1, 0}, {0, 0}));

  const RainbowCycle cycle{{{0, 0}, {1, 0}}};
  const U3CycleInput input = rainbow_cycle_to_u3(gcg, cycle);
  EXPECT_EQ(input.sources, (std::vector<Agent>{0, 1}));
  EXPECT_EQ(input.goods, (std::vector<Good>{3, 2}));
  EXPECT_EQ(input.champions, (std::vector<Agent>{0, 1}));

  const StepOutcome out = try_u3(instance, alloc, input);
  ASSERT_TRUE(out.applied);
  EXPECT_EQ(out.allocation.bundles[0], (GoodSet{2}));
  EXPECT_EQ(out.allocation.bundles[1], (GoodSet{3}));
  EXPECT_EQ(out.allocation.pool, (GoodSet{0, 1}));
}

TEST(GroupChampionGraphTest, MissingChampionIsAnInternalError) {
  // Agent 0 finds g valuable (3 > 2) but does not heavily envy X_1 ∪ {g}.
  const Instance instance = make_instance({{4, 0, 3, 0}, {0, 4, 0, 10}}, Rational(1, 2));
  const PartialAllocation alloc{{GoodSet{0}, GoodSet{1}}, GoodSet{2, 3}};
  const auto c = classify_demand(instance, alloc, 1);
  EXPECT_THROW(build_group_champion_graph(instance, alloc, c, {{0, 1}}), InternalInvariantError);
}

// Four singleton parts in a directed 4-cycle with sources s, u, s, w.
GroupChampionGraph repeated_source_graph() {
  GroupChampionGraph gcg;
  gcg.goods = {10, 11, 12, 13};
  gcg.part_sources = {{0}, {1}, {0}, {2}};
  gcg.graph = KPartiteDigraph({1, 1, 1, 1});
  for (std::size_t p = 0; p < 4; ++p) {
    const std::size_t q = (p + 1) % 4;
    gcg.graph.add_edge({p, 0}, {q, 0});
    gcg.champion_of[{gcg.goods[p], gcg.part_sources[q][0]}] = 100 + p;
  }
  return gcg;
}

TEST(RainbowCycleToU3Test, DistinctSourcesUseWholeCycle) {
  const Instance instance = mutual_instance();
  const PartialAllocation alloc{{GoodSet{0}, GoodSet{1}}, GoodSet{2, 3}};
  const auto gcg = build_group_champion_graph(instance, alloc, classify_demand(instance, alloc, 1), {{0, 1}});
  // Rotation does not matter: the scan starts at the smallest vertex.
  EXPECT_EQ(rainbow_cycle_to_u3(gcg, {{{1, 0}, {0, 0}}}), rainbow_cycle_to_u3(gcg, {{{0, 0}, {1, 0}}}));
}

TEST(RainbowCycleToU3Test, RepeatedSourceTakesFirstClosingWindow) {
  // Starting at part 0 the window (s, u) is followed by s again, so it closes.
  // The window (u, s) is not usable: it is followed by w, not u.
  const auto gcg = repeated_source_graph();
  const U3CycleInput input = rainbow_cycle_to_u3(gcg, {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}});
  EXPECT_EQ(input.sources, (std::vector<Agent>{0, 1}));
  EXPECT_EQ(input.goods, (std::vector<Good>{11, 10}));
  EXPECT_EQ(input.champions, (std::vector<Agent>{100, 101}));
}

TEST(RainbowCycleToU3Test, RejectsMalformedCycles) {
  const auto gcg = repeated_source_graph();
  EXPECT_THROW(rainbow_cycle_to_u3(gcg, {{{0, 0}}}), PreconditionError);
  EXPECT_THROW(rainbow_cycle_to_u3(gcg, {{{0, 0}, {2, 0}}}), PreconditionError);
  EXPECT_THROW(rainbow_cycle_to_u3(gcg, {{}}), PreconditionError);
}

}  // namespace
}  // namespace efx
