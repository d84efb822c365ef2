#include "efx/oracle.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "efx/errors.hpp"

namespace efx {

CounterexampleFixture counterexample_instance(const Rational& epsilon) {
  const std::vector<std::vector<int>> table = {
      {0, 0, 0, 0, 0, 0, 6, 4, 0},           // a
      {16, 4, 24, 4, 0, 34, 31, 0, 2},       // b
      {10, 0, 18, 8, 20, 0, 29, 0, 6},       // c
      {0, 0, 0, 0, 18, 20, 19, 0, 4},        // d
  };
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : table) rows.emplace_back(row.begin(), row.end());
  PartialAllocation x;
  x.bundles = {GoodSet{6, 7}, GoodSet{1, 2, 3}, GoodSet{0, 4}, GoodSet{5}};
  x.pool = GoodSet{8};
  return {Instance(std::move(rows), epsilon), std::move(x)};
}

namespace {

// n^m, or nullopt once it passes `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::size_t exponent, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && total > limit / base) return std::nullopt;
    total *= base;
  }
  return total <= limit ? std::optional<std::uint64_t>(total) : std::nullopt;
}

// Walks every owner vector whose leading digit is `lead` (or all vectors when
// m == 0), digits in [0, radix).
template <typename Visit>
void walk_with_lead(std::size_t m, std::size_t radix, std::size_t lead, Visit&& visit) {
  std::vector<std::size_t> owner(m, 0);
  if (m > 0) owner[0] = lead;
  while (true) {
    visit(owner);
    std::size_t g = m;
    while (g > 1 && owner[g - 1] + 1 == radix) owner[--g] = 0;
    if (g <= 1) break;
    ++owner[g - 1];
  }
}

}  // namespace

EnumerationStats enumerate_complete_allocations(const Instance& instance, const AllocationPredicate& predicate,
                                                const EnumerationOptions& options) {
  const std::size_t n = instance.num_agents();
  const std::size_t m = instance.num_goods();
  if (!bounded_power(n, m, options.budget)) {
    throw ResourceLimitError(std::to_string(n) + "^" + std::to_string(m) +
                             " complete allocations exceed the budget of " + std::to_string(options.budget));
  }
  const std::size_t leads = m == 0 ? 1 : n;
  std::vector<EnumerationStats> per_lead(leads);
  auto work = [&](std::size_t lead) {
    EnumerationStats& stats = per_lead[lead];
    walk_with_lead(m, n, lead, [&](const std::vector<std::size_t>& owner) {
      ++stats.visited;
      if (predicate(PartialAllocation::from_owners(n, owner))) {
        if (stats.matched++ == 0) stats.first_match = owner;
      }
    });
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(leads)));
  if (threads == 1) {
    for (std::size_t lead = 0; lead < leads; ++lead) work(lead);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t lead = t; lead < leads; lead += threads) work(lead);
      });
    }
    for (auto& th : pool) th.join();
  }

  EnumerationStats total;
  for (auto& stats : per_lead) {
    total.visited += stats.visited;
    total.matched += stats.matched;
    if (!total.first_match && stats.first_match) total.first_match = std::move(stats.first_match);
  }
  return total;
}

std::strong_ordering phi_lex_compare(std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != y.size()) {
    throw InvalidInputError("value vectors have different lengths (" + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()) + ")");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool naive_is_partial_efx(const Instance& instance, const PartialAllocation& alloc) {
  const std::size_t n = instance.num_agents();
  for (Agent i = 0; i < n; ++i) {
    Rational mine;
    for (Good g : alloc.bundles[i]) mine += instance.value(i, g);
    for (Agent j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Good removed : alloc.bundles[j]) {
        Rational rest;
        for (Good g : alloc.bundles[j]) {
          if (g != removed) rest += instance.value(i, g);
        }
        if (mine < (Rational(1) - instance.epsilon()) * rest) return false;
      }
    }
  }
  return true;
}

namespace {

template <typename Visit>
std::uint64_t walk_partial(const Instance& instance, std::uint64_t budget, Visit&& visit) {
  const std::size_t n = instance.num_agents();
  const std::size_t m = instance.num_goods();
  if (!bounded_power(n + 1, m, budget)) {
    throw ResourceLimitError(std::to_string(n + 1) + "^" + std::to_string(m) +
                             " partial allocations exceed the budget of " + std::to_string(budget));
  }
  std::uint64_t visited = 0;
  std::vector<std::size_t> owner(m, 0);
  while (true) {
    ++visited;
    visit(owner);
    std::size_t g = m;
    while (g > 0 && owner[g - 1] == n) owner[--g] = 0;
    if (g == 0) break;
    ++owner[g - 1];
  }
  return visited;
}

}  // namespace

PartialSearchResult exhaustive_partial_efx_best(const Instance& instance, std::uint64_t budget) {
  const std::size_t n = instance.num_agents();
  PartialSearchResult result;
  std::optional<std::vector<Rational>> best_key;
  result.visited = walk_partial(instance, budget, [&](const std::vector<std::size_t>& owner) {
    PartialAllocation alloc = PartialAllocation::from_owners(n, owner);
    if (!naive_is_partial_efx(instance, alloc)) return;
    ++result.passing;
    std::vector<Rational> key = own_values(instance, alloc);
    std::sort(key.begin(), key.end());
    if (!best_key || phi_lex_compare(key, *best_key) > 0) {
      best_key = std::move(key);
      result.best = std::move(alloc);
    }
  });
  return result;
}

std::uint64_t allocation_code(const PartialAllocation& alloc, std::size_t num_agents, std::size_t num_goods) {
  std::uint64_t code = 0;
  for (std::size_t owner : alloc.owners(num_goods)) code = code * (num_agents + 1) + owner;
  return code;
}

std::vector<std::uint64_t> partial_efx_passing_set(const Instance& instance, std::uint64_t budget) {
  const std::size_t n = instance.num_agents();
  std::vector<std::uint64_t> codes;
  walk_partial(instance, budget, [&](const std::vector<std::size_t>& owner) {
    if (naive_is_partial_efx(instance, PartialAllocation::from_owners(n, owner))) {
      std::uint64_t code = 0;
      for (std::size_t o : owner) code = code * (n + 1) + o;
      codes.push_back(code);
    }
  });
  // Lexicographic walk with good 0 most significant already yields ascending codes.
  return codes;
}

}  // namespace efx
