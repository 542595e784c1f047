#pragma once

#include <cstdint>

#include "layoutlab/geometry.hpp"

namespace layoutlab {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic separation vector for a coincident pair, each axis in
/// (-1e-6, 1e-6) \ {0}. Antisymmetric: jiggle(s, i, j) == -jiggle(s, j, i).
inline Vec2 jiggle(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  const bool flip = i > j;
  const std::uint64_t lo = flip ? j : i;
  const std::uint64_t hi = flip ? i : j;
  auto axis = [](std::uint64_t h) {
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    double v = (2.0 * u - 1.0) * 1e-6;
    return v == 0.0 ? 5e-7 : v;
  };
  const std::uint64_t h = mix64(seed ^ mix64(lo * 0x100000001b3ULL + hi));
  Vec2 out{axis(h), axis(mix64(h))};
  return flip ? -out : out;
}

}  // namespace layoutlab
