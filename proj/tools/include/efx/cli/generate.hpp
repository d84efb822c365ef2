#pragma once

#include <cstdint>

#include "efx/model.hpp"

namespace efx::cli {

/// Uniform integer valuations in [0, max_value], reproducible per seed.
Instance random_instance(std::size_t agents, std::size_t goods, std::uint64_t max_value, const Rational& epsilon,
                         std::uint64_t seed);

}  // namespace efx::cli
