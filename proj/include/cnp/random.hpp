#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cnp {

using Rng = std::mt19937_64;

/// Uniform index in [0, size); size must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

}  // namespace cnp
