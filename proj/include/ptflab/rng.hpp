#pragma once

#include <cstdint>
#include <random>

namespace ptflab {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream `stream` of master seed `master`:
/// mix64(mix64(master) ^ mix64(stream + 1)). Distinct streams never share a
/// generator state in practice, and (master, stream) fixes the whole trial.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master) ^ mix64(stream + 1));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) { return Rng(stream_seed(master, stream)); }

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace ptflab
