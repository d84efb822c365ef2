#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "efx/model.hpp"

namespace efx {

/// Four agents a, b, c, d (0..3) and nine goods g1..g9 (0..8) whose
/// (1-eps)-EFX partial allocation cannot be completed without hurting agent a.
struct CounterexampleFixture {
  Instance instance;
  PartialAllocation allocation;  // X_a={g7,g8}, X_b={g2,g3,g4}, X_c={g1,g5}, X_d={g6}, pool {g9}
};

CounterexampleFixture counterexample_instance(const Rational& epsilon = Rational(1, 100));

struct EnumerationOptions {
  std::uint64_t budget = 100'000'000;  // maximum number of allocations to visit
  unsigned threads = 1;
};

struct EnumerationStats {
  std::uint64_t visited = 0;
  std::uint64_t matched = 0;
  /// Owner vector of the lexicographically first match.
  std::optional<std::vector<std::size_t>> first_match;
};

using AllocationPredicate = std::function<bool(const PartialAllocation&)>;

/// Visits all n^m complete allocations, owner vectors in lexicographic order
/// with good 0 most significant, and counts those satisfying `predicate`.
/// With several threads the leading good's owner splits the work; the
/// predicate must then be safe to call concurrently. Throws
/// ResourceLimitError if n^m exceeds the budget.
EnumerationStats enumerate_complete_allocations(const Instance& instance, const AllocationPredicate& predicate,
                                                const EnumerationOptions& options = {});

/// Own-bundle values in agent order.
using ValueVector = std::vector<Rational>;

/// Lexicographic order on equally long vectors; InvalidInputError otherwise.
std::strong_ordering phi_lex_compare(std::span<const Rational> x, std::span<const Rational> y);

/// Plain triple loop over (envier, owner, removed good); shares no code with
/// the library verifier so the two can check each other.
bool naive_is_partial_efx(const Instance& instance, const PartialAllocation& alloc);

struct PartialSearchResult {
  PartialAllocation best;
  std::uint64_t visited = 0;
  std::uint64_t passing = 0;
};

/// Tries all (n+1)^m ways to hand each good to an agent or the pool and
/// returns the (1-eps)-EFX candidate whose ascending-sorted value vector is
/// lexicographically largest (first found on ties). Throws ResourceLimitError
/// beyond the budget.
PartialSearchResult exhaustive_partial_efx_best(const Instance& instance, std::uint64_t budget = 10'000'000);

/// Base-(n+1) code of an allocation: digit g is the owner of good g (n for
/// the pool), good 0 most significant.
std::uint64_t allocation_code(const PartialAllocation& alloc, std::size_t num_agents, std::size_t num_goods);

/// Sorted codes of every (1-eps)-EFX partial allocation.
std::vector<std::uint64_t> partial_efx_passing_set(const Instance& instance,
                                                   std::uint64_t budget = 10'000'000);

}  // namespace efx
