#ifndef PVSCORE_RANDOM_HPP
#define PVSCORE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace pvscore {

using Rng = std::mt19937_64;

/// Seed for substream `index` of a run seeded with `seed` (SplitMix64 mix).
/// Independent work items draw from their own substream so results do not
/// depend on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(derive_seed(seed, index));
}

}  // namespace pvscore

#endif  // PVSCORE_RANDOM_HPP
