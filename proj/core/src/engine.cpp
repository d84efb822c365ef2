#include "efx/engine.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "efx/demand.hpp"
#include "efx/envy.hpp"
#include "efx/errors.hpp"
#include "efx/rainbow.hpp"

namespace efx {

namespace {

mpz_class pow5(const mpz_class& x) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), 5);
  return r;
}

mpz_class pow4(const mpz_class& x) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), 4);
  return r;
}

void require_epsilon(const Rational& epsilon) {
  if (epsilon.sign() <= 0 || epsilon > Rational(1, 2)) {
    throw InvalidInputError("epsilon must lie in (0, 1/2], got " + epsilon.to_string());
  }
}

std::size_t to_size(const mpz_class& x) {
  if (!x.fits_ulong_p()) throw ResourceLimitError("value " + x.get_str() + " does not fit in 64 bits");
  return x.get_ui();
}

}  // namespace

std::size_t choose_d(std::size_t num_agents, const Rational& epsilon) {
  require_epsilon(epsilon);
  if (num_agents == 0) throw InvalidInputError("need at least one agent");
  // d^5 * p >= n * q, where eps = p / q.
  const mpz_class p = epsilon.numerator();
  const mpz_class target = mpz_class(static_cast<unsigned long>(num_agents)) * epsilon.denominator();
  mpz_class d = 1;
  while (pow5(d) * p < target) ++d;
  return to_size(d);
}

bool within_pool_bound(std::size_t pool_size, std::size_t num_agents, const Rational& epsilon) {
  require_epsilon(epsilon);
  const mpz_class size = static_cast<unsigned long>(pool_size);
  const mpz_class n = static_cast<unsigned long>(num_agents);
  return pow5(size) * pow4(epsilon.numerator()) <= pow5(mpz_class(64)) * pow4(n) * pow4(epsilon.denominator());
}

std::size_t pool_bound_ceiling(std::size_t num_agents, const Rational& epsilon) {
  require_epsilon(epsilon);
  const mpz_class n = static_cast<unsigned long>(num_agents);
  const mpz_class rhs = pow5(mpz_class(64)) * pow4(n) * pow4(epsilon.denominator());
  const mpz_class p4 = pow4(epsilon.numerator());
  // Smallest b with b^5 * p^4 >= rhs; start from the floor of the real root.
  mpz_class b;
  const mpz_class quotient = rhs / p4;
  mpz_root(b.get_mpz_t(), quotient.get_mpz_t(), 5);
  while (pow5(b) * p4 < rhs) ++b;
  while (b > 0 && pow5(b - 1) * p4 >= rhs) --b;
  return to_size(b);
}

TerminationBudget termination_budget(const Instance& instance) {
  const std::size_t n = instance.num_agents();
  const std::size_t m = instance.num_goods();
  mpz_class widest = 0;
  for (Agent i = 0; i < n; ++i) {
    mpz_class unit = 1;
    for (const Rational& v : instance.row(i)) {
      mpz_lcm(unit.get_mpz_t(), unit.get_mpz_t(), v.denominator().get_mpz_t());
    }
    const Rational scaled = instance.total_value(i) * Rational(mpq_class(unit));
    const mpz_class total = scaled.numerator();
    if (total > widest) widest = total;
  }

  TerminationBudget budget;
  budget.max_value = Rational(mpq_class(widest));
  // log(W + 2) / log(1 / (1 - eps)), with W possibly beyond double range.
  const mpz_class w2 = widest + 2;
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, w2.get_mpz_t());
  const double log_w = std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
  const Rational& eps = instance.epsilon();
  const double growth = std::log1p((eps / (Rational(1) - eps)).to_double());
  const double steps = std::ceil(log_w / growth);
  budget.improvements_per_agent = 1 + static_cast<std::uint64_t>(steps);
  budget.iteration_cap = (static_cast<std::uint64_t>(m) + 1) *
                             (1 + static_cast<std::uint64_t>(n) * budget.improvements_per_agent) +
                         1;
  return budget;
}

namespace {

class Run {
 public:
  Run(const Instance& instance, PartialAllocation start, SolveResult& result)
      : instance_(instance), result_(result), alloc_(std::move(start)) {
    last_values_ = own_values(instance_, alloc_);
  }

  PartialAllocation& alloc() { return alloc_; }

  void record(RuleTag rule, std::optional<Agent> agent, PartialAllocation next) {
    alloc_ = std::move(next);
    TraceStep step{rule, agent, alloc_.pool.size(), own_values(instance_, alloc_)};
    for (Agent i = 0; i < instance_.num_agents(); ++i) {
      if (step.values[i] < last_values_[i]) {
        throw InternalInvariantError("agent " + std::to_string(i) + " lost value during " +
                                     std::string(to_string(rule)));
      }
    }
    last_values_ = step.values;
    result_.trace.push_back(std::move(step));
  }

 private:
  const Instance& instance_;
  SolveResult& result_;
  PartialAllocation alloc_;
  std::vector<Rational> last_values_;
};

}  // namespace

SolveResult solve(const Instance& instance, const std::optional<PartialAllocation>& initial,
                  const SolveOptions& options) {
  SolveResult result;
  result.initial = initial ? *initial : PartialAllocation::empty(instance);
  check_consistent(instance, result.initial);
  if (!verify_partial_efx(instance, result.initial).is_efx) {
    throw PreconditionError("initial allocation is not (1-eps)-EFX");
  }
  if (options.d_override && *options.d_override == 0) throw InvalidInputError("d must be positive");

  const std::size_t n = instance.num_agents();
  const std::size_t d = options.d_override ? *options.d_override : choose_d(n, instance.epsilon());
  result.d_used = d;
  const std::uint64_t small_side = static_cast<std::uint64_t>(d) * d * d * d + d;
  const TerminationBudget budget = termination_budget(instance);

  Run run(instance, result.initial, result);
  for (std::uint64_t iteration = 0;; ++iteration) {
    if (iteration >= budget.iteration_cap) {
      throw InternalInvariantError("solve exceeded its iteration cap of " +
                                   std::to_string(budget.iteration_cap));
    }
    PartialAllocation acyclic = eliminate_envy_cycles(instance, run.alloc());
    if (acyclic != run.alloc()) run.record(RuleTag::kCycleElimination, std::nullopt, std::move(acyclic));

    StepOutcome step = try_u1(instance, run.alloc());
    if (!step.applied) step = try_u2(instance, run.alloc());
    if (step.applied) {
      run.record(step.rule, step.improving_agent, std::move(step.allocation));
      continue;
    }

    const DemandClassification demand = classify_demand(instance, run.alloc(), d);
    if (!check_high_demand_bound(demand, instance)) {
      throw InternalInvariantError(std::to_string(demand.high_demand.size()) +
                                   " high-demand goods exceed 2n/(eps d) with d=" + std::to_string(d));
    }
    if (demand.low_demand.size() > small_side) {
      const EnvyGraph envy = build_envy_graph(instance, run.alloc());
      const SourceAssignment sources = assign_sources(envy);
      const GroupChampionGraph gcg = build_group_champion_graph(instance, run.alloc(), demand, sources);
      const RainbowCycle cycle = find_rainbow_cycle(gcg.graph, d);
      const U3CycleInput input = rainbow_cycle_to_u3(gcg, cycle);
      StepOutcome u3 = try_u3(instance, run.alloc(), input);
      run.record(u3.rule, u3.improving_agent, std::move(u3.allocation));
      continue;
    }

    BoundCheck& check = result.bound_check;
    check.d = d;
    check.high_demand = demand.high_demand.size();
    check.low_demand = demand.low_demand.size();
    check.pool_size = run.alloc().pool.size();
    check.bound_ceiling = pool_bound_ceiling(n, instance.epsilon());
    check.within_bound = within_pool_bound(check.pool_size, n, instance.epsilon());
    break;
  }

  result.allocation = std::move(run.alloc());
  const EfxReport report = verify_partial_efx(instance, result.allocation);
  if (!report.is_efx || !report.pool_heavy_enviers.empty()) {
    throw InternalInvariantError("final allocation fails the (1-eps)-EFX check");
  }
  if (!options.d_override && !result.bound_check.within_bound) {
    throw InternalInvariantError("final pool of " + std::to_string(result.bound_check.pool_size) +
                                 " goods exceeds 64 (n/eps)^(4/5)");
  }
  return result;
}

Initializer parse_initializer(std::string_view name) {
  if (name == "empty") return Initializer::kEmpty;
  if (name == "greedy-nash") return Initializer::kGreedyNash;
  throw InvalidInputError("unknown initializer '" + std::string(name) + "' (expected empty or greedy-nash)");
}

std::string_view to_string(Initializer initializer) {
  switch (initializer) {
    case Initializer::kEmpty:
      return "empty";
    case Initializer::kGreedyNash:
      return "greedy-nash";
  }
  return "?";
}

PartialAllocation greedy_nash_initial(const Instance& instance) {
  const std::size_t n = instance.num_agents();
  const std::size_t m = instance.num_goods();
  std::vector<Rational> best(m);
  for (Good g = 0; g < m; ++g) {
    for (Agent i = 0; i < n; ++i) best[g] = std::max(best[g], instance.value(i, g));
  }
  std::vector<Good> order(m);
  std::iota(order.begin(), order.end(), Good{0});
  std::stable_sort(order.begin(), order.end(), [&](Good a, Good b) { return best[a] > best[b]; });

  PartialAllocation alloc = PartialAllocation::empty(instance);
  std::vector<Rational> value(n);
  for (Good g : order) {
    Agent chosen = 0;
    std::size_t chosen_count = 0;
    Rational chosen_product;
    for (Agent i = 0; i < n; ++i) {
      std::size_t count = 0;
      Rational product(1);
      for (Agent j = 0; j < n; ++j) {
        const Rational v = j == i ? value[j] + instance.value(j, g) : value[j];
        if (v.sign() > 0) {
          ++count;
          product *= v;
        }
      }
      if (i == 0 || count > chosen_count || (count == chosen_count && product > chosen_product)) {
        chosen = i;
        chosen_count = count;
        chosen_product = product;
      }
    }
    alloc.bundles[chosen].insert(g);
    alloc.pool.erase(g);
    value[chosen] += instance.value(chosen, g);
  }

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
  return alloc;
}

SolveResult solve_with_welfare_init(const Instance& instance, Initializer initializer,
                                    const SolveOptions& options) {
  if (initializer == Initializer::kEmpty) return solve(instance, std::nullopt, options);
  return solve(instance, greedy_nash_initial(instance), options);
}

}  // namespace efx
