#pragma once

#include <cstdint>
#include <random>

namespace maskperc {

using Engine = std::mt19937_64;

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Streams with distinct indices are
/// decorrelated; the mapping is fixed so any trial can be replayed alone.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// Purpose tags for seeds derived from a trial seed.
inline constexpr std::uint64_t kNetworkStream = 1;
inline constexpr std::uint64_t kOutbreakStream = 2;

inline Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) noexcept {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [0, 1) from a counter; used where a draw must be a pure
/// function of (seed, key) rather than of engine state.
constexpr double hashed_uniform01(std::uint64_t seed, std::uint64_t key) noexcept {
  return static_cast<double>(derive_seed(seed, key) >> 11) * 0x1.0p-53;
}

}  // namespace maskperc
