#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "efx/rational.hpp"

namespace efx {

using Agent = std::size_t;
using Good = std::size_t;

/// Sorted set of good indices. Small and value-semantic; the sizes involved
/// (tens of goods) make a sorted vector the natural representation.
class GoodSet {
 public:
  GoodSet() = default;
  GoodSet(std::initializer_list<Good> goods);
  explicit GoodSet(std::vector<Good> goods);

  std::size_t size() const { return goods_.size(); }
  bool empty() const { return goods_.empty(); }
  bool contains(Good g) const;
  /// Returns false if g was already present.
  bool insert(Good g);
  /// Returns false if g was absent.
  bool erase(Good g);

  auto begin() const { return goods_.begin(); }
  auto end() const { return goods_.end(); }
  Good operator[](std::size_t i) const { return goods_[i]; }
  const std::vector<Good>& items() const { return goods_; }

  friend bool operator==(const GoodSet&, const GoodSet&) = default;
  friend auto operator<=>(const GoodSet&, const GoodSet&) = default;

 private:
  std::vector<Good> goods_;
};

GoodSet set_union(const GoodSet& a, const GoodSet& b);
GoodSet set_difference(const GoodSet& a, const GoodSet& b);
GoodSet with_good(GoodSet set, Good g);
GoodSet without_good(GoodSet set, Good g);

/// Additive fair-division instance: n agents, m goods, exact non-negative
/// valuations and the approximation slack epsilon in (0, 1/2].
class Instance {
 public:
  /// `valuations` is row-major, one row of `num_goods` entries per agent.
  Instance(std::size_t num_agents, std::size_t num_goods, std::vector<Rational> valuations,
           Rational epsilon);
  Instance(std::vector<std::vector<Rational>> rows, Rational epsilon);

  std::size_t num_agents() const { return num_agents_; }
  std::size_t num_goods() const { return num_goods_; }
  const Rational& epsilon() const { return epsilon_; }
  /// 1 - epsilon, cached because every envy comparison needs it.
  const Rational& keep_factor() const { return keep_factor_; }

  const Rational& value(Agent agent, Good good) const {
    return valuations_[agent * num_goods_ + good];
  }
  std::span<const Rational> row(Agent agent) const {
    return {valuations_.data() + agent * num_goods_, num_goods_};
  }

  /// Value of the entire good set to `agent`.
  Rational total_value(Agent agent) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t num_agents_ = 0;
  std::size_t num_goods_ = 0;
  std::vector<Rational> valuations_;
  Rational epsilon_;
  Rational keep_factor_;
};

/// n disjoint bundles plus the pool of unallocated goods; together they
/// partition the good set of the instance they belong to.
struct PartialAllocation {
  std::vector<GoodSet> bundles;
  GoodSet pool;

  /// Every good unallocated.
  static PartialAllocation empty(const Instance& instance);
  /// owner[g] in [0, n) names the agent holding g; owner[g] == n means pool.
  static PartialAllocation from_owners(std::size_t num_agents, std::span<const std::size_t> owner);
  /// Inverse of from_owners, pool goods mapped to `num_agents`.
  std::vector<std::size_t> owners(std::size_t num_goods) const;

  friend bool operator==(const PartialAllocation&, const PartialAllocation&) = default;
};

/// Throws InvalidInputError unless `alloc` partitions the instance's goods
/// into exactly n bundles and a pool.
void check_consistent(const Instance& instance, const PartialAllocation& alloc);

struct EfxViolation {
  Agent envier = 0;
  Agent owner = 0;
  Good removed = 0;

  friend bool operator==(const EfxViolation&, const EfxViolation&) = default;
};

struct EfxReport {
  bool is_efx = true;
  std::vector<EfxViolation> violations;
  std::vector<Agent> pool_heavy_enviers;
};

Rational bundle_value(const Instance& instance, Agent agent, const GoodSet& goods);

/// Own-bundle value of every agent, in agent order.
std::vector<Rational> own_values(const Instance& instance, const PartialAllocation& alloc);

/// Lists every (i, j, g) with v_i(X_i) < (1 - eps) v_i(X_j \ {g}) and every
/// agent that heavily envies the pool.
EfxReport verify_partial_efx(const Instance& instance, const PartialAllocation& alloc);

/// Same verdict as verify_partial_efx(...).is_efx without collecting
/// witnesses; uses the min-good form of the inequality.
bool is_partial_efx(const Instance& instance, const PartialAllocation& alloc);

/// Product of the agents' own-bundle values (the n-th root is left to the
/// caller since it is not exact).
Rational nash_welfare_product(const Instance& instance, const PartialAllocation& alloc);

}  // namespace efx
