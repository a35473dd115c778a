#pragma once

#include <cstdint>

namespace mabmech {

// Counter-based randomness. Every random quantity in the toolkit is a pure
// function of (seed, key...), so trial loops can run in any order and on any
// number of threads and still reproduce bit-identically, and two mechanisms
// compared under the same seed consume common random numbers.

inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t key_hash(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t h = mix64(seed ^ 0xd1b54a32d192ed03ULL);
  h = mix64(h ^ (a + 0x8cb92ba72f3d8dd7ULL));
  h = mix64(h ^ (b + 0x2545f4914f6cdd1dULL));
  h = mix64(h ^ (c + 0x9e6c63d0876a9a47ULL));
  return h;
}

inline double u01(uint64_t h) { return (h >> 11) * 0x1.0p-53; }

inline bool bernoulli(double p, uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  return u01(key_hash(seed, a, b, c)) < p;
}

// Small sequential generator for shuffles and categorical draws inside a rule.
// Seed it from key_hash so the stream stays a pure function of the run key.
struct SplitMix {
  uint64_t state;

  explicit SplitMix(uint64_t s) : state(s) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
  }
  double next_u01() { return u01(next()); }
  // uniform in [0, n)
  int next_below(int n) { return static_cast<int>(next_u01() * n) % n; }
};

}  // namespace mabmech
