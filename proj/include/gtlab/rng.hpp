#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace gtlab {

/// SplitMix64 finalizer. Used to derive independent substreams from
/// (seed, index) pairs so that parallel or out-of-order generation is
/// reproducible.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, n), n >= 1, by bitmask rejection. mt19937_64 output
/// is fully specified by the standard, so results are platform-independent.
template <class Engine>
std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
  for (;;) {
    std::uint64_t v = eng() & mask;
    if (v < n) return v;
  }
}

}  // namespace gtlab
