#include "efx/model.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "efx/errors.hpp"

namespace efx {

GoodSet::GoodSet(std::initializer_list<Good> goods) : GoodSet(std::vector<Good>(goods)) {}

GoodSet::GoodSet(std::vector<Good> goods) : goods_(std::move(goods)) {
  std::sort(goods_.begin(), goods_.end());
  goods_.erase(std::unique(goods_.begin(), goods_.end()), goods_.end());
}

bool GoodSet::contains(Good g) const { return std::binary_search(goods_.begin(), goods_.end(), g); }

bool GoodSet::insert(Good g) {
  auto it = std::lower_bound(goods_.begin(), goods_.end(), g);
  if (it != goods_.end() && *it == g) return false;
  goods_.insert(it, g);
  return true;
}

bool GoodSet::erase(Good g) {
  auto it = std::lower_bound(goods_.begin(), goods_.end(), g);
  if (it == goods_.end() || *it != g) return false;
  goods_.erase(it);
  return true;
}

GoodSet set_union(const GoodSet& a, const GoodSet& b) {
  std::vector<Good> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GoodSet(std::move(out));
}

GoodSet set_difference(const GoodSet& a, const GoodSet& b) {
  std::vector<Good> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GoodSet(std::move(out));
}

GoodSet with_good(GoodSet set, Good g) {
  set.insert(g);
  return set;
}

GoodSet without_good(GoodSet set, Good g) {
  set.erase(g);
  return set;
}

Instance::Instance(std::size_t num_agents, std::size_t num_goods, std::vector<Rational> valuations,
                   Rational epsilon)
    : num_agents_(num_agents),
      num_goods_(num_goods),
      valuations_(std::move(valuations)),
      epsilon_(std::move(epsilon)) {
  if (num_agents_ == 0) throw InvalidInputError("instance needs at least one agent");
  if (valuations_.size() != num_agents_ * num_goods_) {
    throw InvalidInputError("valuation matrix has " + std::to_string(valuations_.size()) +
                            " entries, expected " + std::to_string(num_agents_ * num_goods_));
  }
  if (epsilon_.sign() <= 0 || epsilon_ > Rational(1, 2)) {
    throw InvalidInputError("epsilon must lie in (0, 1/2], got " + epsilon_.to_string());
  }
  for (std::size_t k = 0; k < valuations_.size(); ++k) {
    if (valuations_[k].sign() < 0) {
      throw InvalidInputError("negative valuation for agent " + std::to_string(k / num_goods_) +
                              ", good " + std::to_string(k % num_goods_));
    }
  }
  keep_factor_ = Rational(1) - epsilon_;
}

namespace {

std::vector<Rational> flatten(const std::vector<std::vector<Rational>>& rows) {
  std::vector<Rational> flat;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != width) throw InvalidInputError("valuation rows have differing lengths");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace

Instance::Instance(std::vector<std::vector<Rational>> rows, Rational epsilon)
    : Instance(rows.size(), rows.empty() ? 0 : rows.front().size(), flatten(rows),
               std::move(epsilon)) {}

Rational Instance::total_value(Agent agent) const {
  Rational sum;
  for (const auto& v : row(agent)) sum += v;
  return sum;
}

PartialAllocation PartialAllocation::empty(const Instance& instance) {
  PartialAllocation alloc;
  alloc.bundles.resize(instance.num_agents());
  std::vector<Good> all(instance.num_goods());
  for (Good g = 0; g < all.size(); ++g) all[g] = g;
  alloc.pool = GoodSet(std::move(all));
  return alloc;
}

PartialAllocation PartialAllocation::from_owners(std::size_t num_agents,
                                                 std::span<const std::size_t> owner) {
  std::vector<std::vector<Good>> bundles(num_agents);
  std::vector<Good> pool;
  for (Good g = 0; g < owner.size(); ++g) {
    if (owner[g] < num_agents) {
      bundles[owner[g]].push_back(g);
    } else if (owner[g] == num_agents) {
      pool.push_back(g);
    } else {
      throw InvalidInputError("owner code " + std::to_string(owner[g]) + " out of range");
    }
  }
  PartialAllocation alloc;
  alloc.bundles.reserve(num_agents);
  for (auto& b : bundles) alloc.bundles.emplace_back(std::move(b));
  alloc.pool = GoodSet(std::move(pool));
  return alloc;
}

std::vector<std::size_t> PartialAllocation::owners(std::size_t num_goods) const {
  std::vector<std::size_t> owner(num_goods, bundles.size());
  for (Agent a = 0; a < bundles.size(); ++a) {
    for (Good g : bundles[a]) {
      if (g < num_goods) owner[g] = a;
    }
  }
  return owner;
}

void check_consistent(const Instance& instance, const PartialAllocation& alloc) {
  if (alloc.bundles.size() != instance.num_agents()) {
    throw InvalidInputError("allocation has " + std::to_string(alloc.bundles.size()) +
                            " bundles for " + std::to_string(instance.num_agents()) + " agents");
  }
  std::vector<int> seen(instance.num_goods(), 0);
  auto mark = [&](const GoodSet& set) {
    for (Good g : set) {
      if (g >= instance.num_goods()) {
        throw InvalidInputError("good index " + std::to_string(g) + " out of range");
      }
      if (seen[g]++ != 0) {
        throw InvalidInputError("good " + std::to_string(g) + " appears more than once");
      }
    }
  };
  for (const auto& b : alloc.bundles) mark(b);
  mark(alloc.pool);
  for (Good g = 0; g < seen.size(); ++g) {
    if (seen[g] == 0) throw InvalidInputError("good " + std::to_string(g) + " is unaccounted for");
  }
}

Rational bundle_value(const Instance& instance, Agent agent, const GoodSet& goods) {
  if (agent >= instance.num_agents()) {
    throw InvalidInputError("agent index " + std::to_string(agent) + " out of range");
  }
  Rational sum;
  for (Good g : goods) {
    if (g >= instance.num_goods()) {
      throw InvalidInputError("good index " + std::to_string(g) + " out of range");
    }
    sum += instance.value(agent, g);
  }
  return sum;
}

std::vector<Rational> own_values(const Instance& instance, const PartialAllocation& alloc) {
  std::vector<Rational> own;
  own.reserve(instance.num_agents());
  for (Agent i = 0; i < instance.num_agents(); ++i) {
    own.push_back(bundle_value(instance, i, alloc.bundles[i]));
  }
  return own;
}

EfxReport verify_partial_efx(const Instance& instance, const PartialAllocation& alloc) {
  check_consistent(instance, alloc);
  const auto own = own_values(instance, alloc);
  const Rational& keep = instance.keep_factor();
  EfxReport report;
  for (Agent i = 0; i < instance.num_agents(); ++i) {
    for (Agent j = 0; j < instance.num_agents(); ++j) {
      if (i == j) continue;
      const Rational whole = bundle_value(instance, i, alloc.bundles[j]);
      for (Good g : alloc.bundles[j]) {
        if (own[i] < keep * (whole - instance.value(i, g))) {
          report.violations.push_back({i, j, g});
        }
      }
    }
    if (own[i] < keep * bundle_value(instance, i, alloc.pool)) {
      report.pool_heavy_enviers.push_back(i);
    }
  }
  report.is_efx = report.violations.empty();
  return report;
}

bool is_partial_efx(const Instance& instance, const PartialAllocation& alloc) {
  check_consistent(instance, alloc);
  const auto own = own_values(instance, alloc);
  const Rational& keep = instance.keep_factor();
  for (Agent i = 0; i < instance.num_agents(); ++i) {
    for (Agent j = 0; j < instance.num_agents(); ++j) {
      if (i == j || alloc.bundles[j].empty()) continue;
      Rational whole;
      const Rational* smallest = nullptr;
      for (Good g : alloc.bundles[j]) {
        const Rational& v = instance.value(i, g);
        whole += v;
        if (smallest == nullptr || v < *smallest) smallest = &v;
      }
      if (own[i] < keep * (whole - *smallest)) return false;
    }
  }
  return true;
}

Rational nash_welfare_product(const Instance& instance, const PartialAllocation& alloc) {
  check_consistent(instance, alloc);
  Rational product(1);
  for (Agent i = 0; i < instance.num_agents(); ++i) {
    product *= bundle_value(instance, i, alloc.bundles[i]);
  }
  return product;
}

}  // namespace efx
