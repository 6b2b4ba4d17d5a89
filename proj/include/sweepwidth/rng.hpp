#pragma once

#include <cstdint>
#include <random>

namespace sweepwidth {

/// SplitMix64 finalizer; derives independent stream seeds from one seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Engine for stream `counter` of the run seeded by `seed`.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t counter) {
  return std::mt19937_64(split_seed(seed, counter));
}

}  // namespace sweepwidth
