#include "efx/champion.hpp"

#include <vector>

#include "efx/errors.hpp"

namespace efx {

bool heavy_envy(const Instance& instance, const PartialAllocation& alloc, Agent agent,
                const GoodSet& target) {
  const Rational own = bundle_value(instance, agent, alloc.bundles.at(agent));
  return own < instance.keep_factor() * bundle_value(instance, agent, target);
}

bool strong_envy(const Instance& instance, const PartialAllocation& alloc, Agent agent,
                 const GoodSet& target) {
  if (target.size() < 2) return false;
  const Rational own = bundle_value(instance, agent, alloc.bundles.at(agent));
  Rational whole;
  const Rational* cheapest = nullptr;
  for (Good g : target) {
    const Rational& v = instance.value(agent, g);
    whole += v;
    if (cheapest == nullptr || v < *cheapest) cheapest = &v;
  }
  return own < instance.keep_factor() * (whole - *cheapest);
}

Witness most_envious_agent(const Instance& instance, const PartialAllocation& alloc,
                           const GoodSet& target) {
  check_consistent(instance, alloc);
  const auto own = own_values(instance, alloc);
  return most_envious_agent(instance, own, target);
}

Witness most_envious_agent(const Instance& instance, std::span<const Rational> own,
                           const GoodSet& target) {
  const std::size_t n = instance.num_agents();
  const Rational& keep = instance.keep_factor();

  // Running value of the shrinking set for every agent.
  std::vector<Rational> value(n);
  for (Agent i = 0; i < n; ++i) value[i] = bundle_value(instance, i, target);

  Witness result{n, target};
  for (Agent i = 0; i < n; ++i) {
    if (own[i] < keep * value[i]) {
      result.champion = i;
      break;
    }
  }
  if (result.champion == n) {
    throw PreconditionError("no agent heavily envies the target set");
  }

  GoodSet& z = result.witness_set;
  while (z.size() >= 2) {
    bool shrunk = false;
    for (Agent i = 0; i < n && !shrunk; ++i) {
      for (Good g : z) {
        if (own[i] < keep * (value[i] - instance.value(i, g))) {
          z.erase(g);
          for (Agent a = 0; a < n; ++a) value[a] -= instance.value(a, g);
          result.champion = i;
          shrunk = true;
          break;
        }
      }
    }
    if (!shrunk) break;
  }
  return result;
}

}  // namespace efx
