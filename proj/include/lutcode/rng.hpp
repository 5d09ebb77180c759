#pragma once

#include <cstdint>

namespace lutcode {

// Counter-based randomness: every draw is a keyed hash of explicit indices,
// never of call history, so results are identical for any execution order
// or thread count. The mixer is the splitmix64 finalizer applied per word.
namespace rng {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline uint64_t mix(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline uint64_t hash(uint64_t seed, uint64_t a) {
  uint64_t h = mix(seed + kGolden);
  return mix(h ^ (a + kGolden));
}

inline uint64_t hash(uint64_t seed, uint64_t a, uint64_t b) {
  return mix(hash(seed, a) ^ (b + kGolden));
}

inline uint64_t hash(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return mix(hash(seed, a, b) ^ (c + kGolden));
}

inline uint64_t hash(uint64_t seed, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  return mix(hash(seed, a, b, c) ^ (d + kGolden));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by multiply-shift; bound >= 1.
inline uint64_t bounded(uint64_t h, uint64_t bound) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(h) * bound) >> 64);
}

// Stream tags keep independent uses of the same seed apart.
constexpr uint64_t kStreamCell = 0x01;
constexpr uint64_t kStreamDcPick = 0x02;
constexpr uint64_t kStreamFault = 0x03;
constexpr uint64_t kStreamBatch = 0x04;

}  // namespace rng
}  // namespace lutcode
