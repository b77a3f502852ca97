#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace condtest {

// splitmix64 finalizer; bijective, good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_key(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t w : words) h = mix64(h ^ w);
  return h;
}

// Independent deterministic stream keyed by (seed, a, b).  The same key always
// yields the same draw sequence, so per-vertex/per-round streams stay
// identical under any scheduling of the callers.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return std::mt19937_64(derive_key({seed, a, b}));
}

}  // namespace condtest
