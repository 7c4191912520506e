#pragma once

#include <cstdint>

#include "crossforest/rational.hpp"

namespace crossforest {

/// SplitMix64 output function. Used as a counter-based generator: draw k of stream s is
/// mix(s + (k + 1) * golden gamma), so any draw can be recomputed independently.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t draw(std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(stream + (counter + 1) * kGoldenGamma);
}

/// Seed for the next retry or sub-stream.
inline std::uint64_t derive_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x6a09e667f3bcc909ull); }

/// True iff u / 2^64 < p, evaluated exactly.
bool uniform_below(std::uint64_t u, const Rational& p);

}  // namespace crossforest
