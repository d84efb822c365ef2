#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "efx/model.hpp"

namespace efx {

enum class RuleTag { kCycleElimination, kU1, kU2, kU3 };

std::string_view to_string(RuleTag tag);

/// Cyclic chain for the third rule: champions[i] is reachable from
/// sources[i] and is the champion of X_{sources[i+1]} ∪ {goods[i+1]},
/// indices mod length.
struct U3CycleInput {
  std::vector<Agent> sources;
  std::vector<Good> goods;
  std::vector<Agent> champions;

  friend bool operator==(const U3CycleInput&, const U3CycleInput&) = default;
};

struct StepOutcome {
  bool applied = false;
  PartialAllocation allocation;
  RuleTag rule = RuleTag::kU1;
  /// The agent the rule was aimed at: the receiving source for U1, the
  /// champion for U2, and for U3 the first champion in cycle order.
  std::optional<Agent> improving_agent;
};

/// Gives one pool good to a source of the envy graph when nobody strongly
/// envies the enlarged bundle. First hit in (source, good) order wins.
StepOutcome try_u1(const Instance& instance, const PartialAllocation& alloc);

/// When somebody heavily envies the pool, hands the pool's witness set to its
/// champion and returns the champion's old bundle to the pool.
StepOutcome try_u2(const Instance& instance, const PartialAllocation& alloc);

/// Shifts bundles along the envy paths sources[i] ~> champions[i] and gives
/// each champion the witness cut from the next source's bundle plus good.
/// Leftovers return to the pool. If two envy paths share an agent the cycle
/// is shortcut through that agent first, which keeps the shift well defined.
/// Throws PreconditionError when the cycle does not meet its invariants.
StepOutcome try_u3(const Instance& instance, const PartialAllocation& alloc,
                   const U3CycleInput& cycle);

}  // namespace efx
