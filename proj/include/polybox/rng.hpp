#pragma once

#include <cstdint>
#include <random>

namespace polybox {

using Rng = std::mt19937_64;

// std::uniform_int_distribution is implementation-defined; rejection sampling on the
// raw engine output keeps seeded runs identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

}  // namespace polybox
