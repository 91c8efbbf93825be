#pragma once

#include <cstdint>
#include <random>

namespace paspec {

/// Uniform integer in [0, bound) from a 64-bit engine.
///
/// Lemire's multiply-and-reject method. Unlike std::uniform_int_distribution
/// the output sequence is fixed by the engine alone, so generated graphs are
/// identical across standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace paspec
