#include "efx/engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "efx/demand.hpp"
#include "efx/envy.hpp"
#include "efx/errors.hpp"
#include "efx/oracle.hpp"
#include "fixtures.hpp"

namespace efx {
namespace {

using testing::make_instance;

TEST(ChooseDTest, Examples) {
  EXPECT_EQ(choose_d(1, Rational(1, 2)), 2u);
  EXPECT_EQ(choose_d(4, Rational(1, 2)), 2u);
  EXPECT_EQ(choose_d(100, Rational(1, 10)), 4u);
  EXPECT_EQ(choose_d(16, Rational(1, 2)), 2u);  // 2^5 = 32 exactly
  EXPECT_EQ(choose_d(17, Rational(1, 2)), 3u);
  EXPECT_THROW(choose_d(0, Rational(1, 2)), InvalidInputError);
  EXPECT_THROW(choose_d(3, Rational(2, 3)), InvalidInputError);
}

TEST(ChooseDTest, SmallestFifthPowerAboveRatio) {
  for (std::size_t n = 1; n <= 60; ++n) {
    for (int q : {2, 3, 4, 7, 10, 100}) {
      const std::size_t d = choose_d(n, Rational(1, q));
      const double ratio = static_cast<double>(n) * q;
      EXPECT_GE(std::pow(static_cast<double>(d), 5), ratio);
      EXPECT_LT(std::pow(static_cast<double>(d - 1), 5), ratio);
    }
  }
}

TEST(PoolBoundTest, ExactAtPerfectPowers) {
  // n / eps = 32 gives 64 * 32^(4/5) = 64 * 16 = 1024.
  EXPECT_EQ(pool_bound_ceiling(16, Rational(1, 2)), 1024u);
  EXPECT_TRUE(within_pool_bound(1024, 16, Rational(1, 2)));
  EXPECT_FALSE(within_pool_bound(1025, 16, Rational(1, 2)));
  EXPECT_EQ(pool_bound_ceiling(1, Rational(1, 2)), 112u);  // 64 * 2^0.8 = 111.43
}

TEST(PoolBoundTest, AgreesWithFloatingPointAwayFromTies) {
  for (std::size_t n = 1; n <= 40; ++n) {
    for (int q : {2, 4, 10, 100}) {
      const double real = 64.0 * std::pow(static_cast<double>(n) * q, 0.8);
      if (std::abs(real - std::round(real)) < 1e-6) continue;
      const std::size_t ceiling = pool_bound_ceiling(n, Rational(1, q));
      EXPECT_EQ(ceiling, static_cast<std::size_t>(std::ceil(real)));
      EXPECT_TRUE(within_pool_bound(ceiling - 1, n, Rational(1, q)));
      EXPECT_FALSE(within_pool_bound(ceiling, n, Rational(1, q)));
    }
  }
}

TEST(TerminationBudgetTest, IntegerValues) {
  const Instance instance = make_instance({{3, 3, 2}, {1, 0, 0}}, Rational(1, 2));
  const TerminationBudget b = termination_budget(instance);
  EXPECT_EQ(b.max_value, Rational(8));
  // log2(10) = 3.32, so four doublings plus the first step off zero.
  EXPECT_EQ(b.improvements_per_agent, 5u);
  EXPECT_EQ(b.iteration_cap, (3u + 1) * (1 + 2 * 5) + 1);
}

TEST(TerminationBudgetTest, FractionalValuesAreScaledPerAgent) {
  std::vector<std::vector<Rational>> rows{{Rational(1, 3), Rational(1, 6)}, {Rational(5), Rational(0)}};
  const Instance instance(std::move(rows), Rational(1, 2));
  // Agent 0 in units of 1/6: 2 + 1 = 3; agent 1: 5.
  EXPECT_EQ(termination_budget(instance).max_value, Rational(5));
}

TEST(SolveTest, SingleAgentTakesEverything) {
  const Instance instance = make_instance({{1, 2, 3, 0}}, Rational(1, 3));
  const SolveResult r = solve(instance);
  EXPECT_EQ(r.allocation.bundles[0], (GoodSet{0, 1, 2, 3}));
  EXPECT_TRUE(r.allocation.pool.empty());
}

TEST(SolveTest, IdenticalValuationsMatchOracle) {
  const Instance instance = make_instance({{3, 3, 2, 2}, {3, 3, 2, 2}}, Rational(1, 2));
  const SolveResult r = solve(instance);
  EXPECT_TRUE(verify_partial_efx(instance, r.allocation).is_efx);
  const auto passing = partial_efx_passing_set(instance);
  EXPECT_TRUE(std::binary_search(passing.begin(), passing.end(), allocation_code(r.allocation, 2, 4)));
  EXPECT_LE(r.allocation.pool.size(), 1u);
}

TEST(SolveTest, CounterexampleInstanceFromEmpty) {
  const auto [instance, x] = counterexample_instance();
  const SolveResult r = solve(instance);
  const EfxReport report = verify_partial_efx(instance, r.allocation);
  EXPECT_TRUE(report.is_efx);
  EXPECT_TRUE(report.pool_heavy_enviers.empty());
  EXPECT_TRUE(r.bound_check.within_bound);
  EXPECT_FALSE(r.trace.empty());
  EXPECT_EQ(r.d_used, choose_d(4, Rational(1, 100)));
}

TEST(SolveTest, StartsFromGivenAllocation) {
  const auto [instance, x] = counterexample_instance();
  const SolveResult r = solve(instance, x);
  EXPECT_EQ(r.initial, x);
  const auto before = own_values(instance, x);
  const auto after = own_values(instance, r.allocation);
  for (Agent i = 0; i < 4; ++i) EXPECT_GE(after[i], before[i]);
}

TEST(SolveTest, RejectsBadStarts) {
  const Instance instance = make_instance({{5, 1}, {1, 5}}, Rational(1, 2));
  EXPECT_THROW(solve(instance, PartialAllocation{{GoodSet{0}}, GoodSet{1}}), InvalidInputError);
  // Agent 0 holds nothing and values {0, 1} at 6 in agent 1's hands.
  const Instance skew = make_instance({{3, 3, 0}, {0, 0, 1}}, Rational(1, 2));
  EXPECT_THROW(solve(skew, PartialAllocation{{GoodSet{}, GoodSet{0, 1, 2}}, GoodSet{}}), PreconditionError);
}

TEST(SolveTest, ZeroGoods) {
  const Instance instance(3, 0, {}, Rational(1, 2));
  const SolveResult r = solve(instance);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_TRUE(r.bound_check.within_bound);
}

void expect_halting_state(const Instance& instance, const SolveResult& r) {
  const PartialAllocation& x = r.allocation;
  const EfxReport report = verify_partial_efx(instance, x);
  ASSERT_TRUE(report.is_efx);
  ASSERT_TRUE(report.pool_heavy_enviers.empty());
  ASSERT_TRUE(build_envy_graph(instance, x).is_acyclic());
  ASSERT_FALSE(try_u1(instance, x).applied);
  ASSERT_FALSE(try_u2(instance, x).applied);
  const std::size_t d = r.d_used;
  const auto demand = classify_demand(instance, x, d);
  ASSERT_TRUE(check_high_demand_bound(demand, instance));
  ASSERT_LE(demand.low_demand.size(), d * d * d * d + d);
  ASSERT_EQ(demand.high_demand.size(), r.bound_check.high_demand);
  ASSERT_EQ(demand.low_demand.size(), r.bound_check.low_demand);
}

TEST(SolveTest, RandomInstancesHaltInTheExpectedState) {
  std::mt19937_64 rng(15);
  const Rational eps[] = {Rational(1, 2), Rational(1, 4), Rational(1, 10)};
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const std::size_t m = n + rng() % (25 - n);
    const Instance instance = testing::random_instance(rng, n, m, 100, eps[trial % 3]);
    const SolveResult r = solve(instance);
    expect_halting_state(instance, r);
    ASSERT_TRUE(r.bound_check.within_bound);
    ASSERT_LE(r.trace.size(), 2 * termination_budget(instance).iteration_cap);
  }
}

TEST(SolveTest, SmallDExercisesTheRainbowRule) {
  // Sparse valuations leave many pool goods valuable to a single agent.
  std::mt19937_64 rng(16);
  std::size_t u3_steps = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t m = 6 + rng() % 30;
    std::vector<std::vector<int>> rows(n, std::vector<int>(m));
    for (auto& row : rows) {
      for (int& v : row) v = rng() % 3 == 0 ? static_cast<int>(rng() % 100) : 0;
    }
    const Instance instance = make_instance(rows, Rational(1, 2 + rng() % 9));
    const SolveResult r = solve(instance, std::nullopt, {.d_override = 1});
    EXPECT_EQ(r.d_used, 1u);
    expect_halting_state(instance, r);
    for (const TraceStep& step : r.trace) u3_steps += step.rule == RuleTag::kU3 ? 1 : 0;
  }
  EXPECT_GT(u3_steps, 0u);
}

TEST(SolveTest, TraceValuesNeverDecrease) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const Instance instance = testing::random_instance(rng, n, n + rng() % 15, 50, Rational(1, 4));
    const SolveResult r = solve(instance, std::nullopt, {.d_override = 1 + trial % 2});
    std::vector<Rational> last = own_values(instance, r.initial);
    std::size_t consecutive_u1 = 0;
    for (const TraceStep& step : r.trace) {
      for (Agent i = 0; i < n; ++i) ASSERT_GE(step.values[i], last[i]);
      if (step.rule == RuleTag::kU2 || step.rule == RuleTag::kU3) {
        bool factor = false;
        for (Agent i = 0; i < n; ++i) {
          factor = factor || (step.values[i] > last[i] && instance.keep_factor() * step.values[i] >= last[i]);
        }
        ASSERT_TRUE(factor);
        consecutive_u1 = 0;
      } else if (step.rule == RuleTag::kU1) {
        ASSERT_LE(++consecutive_u1, instance.num_goods());
        ASSERT_TRUE(step.improving_agent.has_value());
      } else {
        ASSERT_FALSE(step.improving_agent.has_value());
      }
      last = step.values;
    }
  }
}

TEST(InitializerTest, Parsing) {
  EXPECT_EQ(parse_initializer("empty"), Initializer::kEmpty);
  EXPECT_EQ(parse_initializer("greedy-nash"), Initializer::kGreedyNash);
  EXPECT_THROW(parse_initializer("nash"), InvalidInputError);
  EXPECT_EQ(to_string(Initializer::kGreedyNash), "greedy-nash");
}

TEST(InitializerTest, EmptyMatchesPlainSolve) {
  const auto [instance, x] = counterexample_instance();
  const SolveResult a = solve_with_welfare_init(instance, Initializer::kEmpty);
  const SolveResult b = solve(instance);
  EXPECT_EQ(a.allocation, b.allocation);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(InitializerTest, GreedyNashGivesEachAgentItsGood) {
  const Instance instance = make_instance({{1, 0}, {0, 1}}, Rational(1, 2));
  const PartialAllocation start = greedy_nash_initial(instance);
  EXPECT_EQ(start.bundles[0], (GoodSet{0}));
  EXPECT_EQ(start.bundles[1], (GoodSet{1}));
  const SolveResult r = solve_with_welfare_init(instance, Initializer::kGreedyNash);
  EXPECT_EQ(nash_welfare_product(instance, r.allocation), Rational(1));
}

TEST(InitializerTest, GreedyNashIsEfxAndWelfareNeverDrops) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const Instance instance = testing::random_instance(rng, n, n + rng() % 20, 100, Rational(1, 2 + rng() % 9));
    const PartialAllocation start = greedy_nash_initial(instance);
    ASSERT_TRUE(verify_partial_efx(instance, start).is_efx);
    const SolveResult r = solve_with_welfare_init(instance, Initializer::kGreedyNash);
    ASSERT_EQ(r.initial, start);
    ASSERT_GE(nash_welfare_product(instance, r.allocation), nash_welfare_product(instance, start));
  }
}

}  // namespace
}  // namespace efx
