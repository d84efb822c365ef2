#include "efx/cli/generate.hpp"

#include <random>

namespace efx::cli {

Instance random_instance(std::size_t agents, std::size_t goods, std::uint64_t max_value, const Rational& epsilon,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, max_value);
  std::vector<Rational> values;
  values.reserve(agents * goods);
  for (std::size_t i = 0; i < agents * goods; ++i) values.emplace_back(dist(rng));
  return Instance(agents, goods, std::move(values), epsilon);
}

}  // namespace efx::cli
