#pragma once

// Portable random streams. std::mt19937_64 is fully specified by the
// standard; distributions are not, so uniforms are built here from raw
// 64-bit outputs. Stream r of seed s is seeded with splitmix64(s, r).

#include <cstdint>
#include <random>
#include <string_view>

namespace bitcred {

inline constexpr std::string_view kGeneratorId = "mt19937_64+splitmix64";

/// One SplitMix64 output step applied to x.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace bitcred
