#pragma once

#include <span>

#include "efx/model.hpp"

namespace efx {

/// Most-envious-agent witness pair for a set S: the champion heavily envies
/// witness_set ⊆ S and no agent strongly envies witness_set.
struct Witness {
  Agent champion = 0;
  GoodSet witness_set;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// v_agent(X_agent) < (1 - eps) v_agent(target).
bool heavy_envy(const Instance& instance, const PartialAllocation& alloc, Agent agent,
                const GoodSet& target);

/// Heavy envy toward target \ {g} for some g in target. Evaluated through the
/// cheapest removable good, which is equivalent for additive valuations.
bool strong_envy(const Instance& instance, const PartialAllocation& alloc, Agent agent,
                 const GoodSet& target);

/// Shrinks `target` one good at a time while somebody strongly envies it.
/// Starts from the lowest-indexed heavy envier; each round scans agents, then
/// removal candidates, in index order and takes the first hit. Throws
/// PreconditionError when nobody heavily envies `target`.
Witness most_envious_agent(const Instance& instance, const PartialAllocation& alloc,
                           const GoodSet& target);

/// Variant for callers that already hold the own-bundle values.
Witness most_envious_agent(const Instance& instance, std::span<const Rational> own,
                           const GoodSet& target);

}  // namespace efx
