#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "efx/model.hpp"
#include "efx/update_rules.hpp"

namespace efx {

/// Smallest d with d^5 >= n / epsilon, by exact integer comparison.
std::size_t choose_d(std::size_t num_agents, const Rational& epsilon);

/// |pool|^5 * eps^4 <= 64^5 * n^4, i.e. |pool| <= 64 (n/eps)^(4/5), exactly.
bool within_pool_bound(std::size_t pool_size, std::size_t num_agents, const Rational& epsilon);

/// Ceiling of 64 (n/eps)^(4/5).
std::size_t pool_bound_ceiling(std::size_t num_agents, const Rational& epsilon);

/// Loop-iteration limit for one solve. Each agent's values are scaled by the
/// common denominator of its row so that every bundle value is an integer
/// multiple of one unit; `max_value` is the largest scaled total. An agent's
/// value can then grow by the factor 1/(1-eps) at most `improvements_per_agent`
/// times, and at most m rounds of the first rule separate two such growth
/// steps.
struct TerminationBudget {
  Rational max_value;
  std::uint64_t improvements_per_agent = 0;
  std::uint64_t iteration_cap = 0;
};

TerminationBudget termination_budget(const Instance& instance);

struct TraceStep {
  RuleTag rule = RuleTag::kU1;
  std::optional<Agent> improving_agent;  // none for cycle elimination
  std::size_t pool_size = 0;
  std::vector<Rational> values;          // own-bundle values after the step
};

/// Demand split observed when the loop halted.
struct BoundCheck {
  std::size_t d = 0;
  std::size_t high_demand = 0;
  std::size_t low_demand = 0;
  std::size_t pool_size = 0;
  std::size_t bound_ceiling = 0;  // ceiling of 64 (n/eps)^(4/5)
  bool within_bound = false;
};

struct SolveOptions {
  /// Replaces choose_d's value. Meant for exercising the rainbow-cycle rule
  /// on instances too small to trigger it otherwise; the final pool bound is
  /// then not asserted.
  std::optional<std::size_t> d_override;
};

struct SolveResult {
  PartialAllocation allocation;
  PartialAllocation initial;
  std::size_t d_used = 0;
  std::vector<TraceStep> trace;
  BoundCheck bound_check;
};

/// Runs the update loop from `initial` (the empty allocation if absent) until
/// no rule applies. Throws InvalidInputError for an inconsistent start,
/// PreconditionError for a start that is not (1-eps)-EFX, and
/// InternalInvariantError if the iteration cap is exceeded or a guarantee of
/// the construction fails.
SolveResult solve(const Instance& instance, const std::optional<PartialAllocation>& initial = std::nullopt,
                  const SolveOptions& options = {});

enum class Initializer { kEmpty, kGreedyNash };

/// "empty" or "greedy-nash"; anything else throws InvalidInputError.
Initializer parse_initializer(std::string_view name);
std::string_view to_string(Initializer initializer);

/// Greedy welfare start: goods in descending order of their largest value
/// (ties to the lower index) go to the agent that maximises, first, the number
/// of agents with positive value and, second, the product of the positive
/// values (ties to the lower index). Then, while the allocation is not
/// (1-eps)-EFX, the first reported violation's owner returns its least
/// valuable good (to itself) to the pool.
PartialAllocation greedy_nash_initial(const Instance& instance);

SolveResult solve_with_welfare_init(const Instance& instance, Initializer initializer,
                                    const SolveOptions& options = {});

}  // namespace efx
