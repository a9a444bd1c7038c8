#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace strata {

// Standard-library distributions are implementation-defined, so shuffles and
// Bernoulli draws are derived directly from the raw 64-bit engine output to
// keep results identical across toolchains.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). `bound` must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

/// Uniform real in [0, 1) with 53 bits of precision.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace strata
