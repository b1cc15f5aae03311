#pragma once

#include <cstddef>
#include <cstdint>

#include "erc/ermodel.hpp"

namespace erc {

struct GeneratorLimits {
  std::size_t max_sets = 50;
  std::size_t max_attributes = 200;
  std::size_t max_restrictions = 100;
};

/// A random model that passes validate_model and translates without
/// errors in batch mode. Deterministic in `seed`.
ERModel generate_model(std::uint64_t seed, const GeneratorLimits& limits = {});

/// A random model whose census total S + A + C is exactly `elements`
/// (at least 1).
ERModel generate_model_of_size(std::uint64_t seed, std::size_t elements);

}  // namespace erc
