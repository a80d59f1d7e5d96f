// SplitMix64: a small seeded generator that can be split into independent streams.
#pragma once

#include <cstdint>

#include "lmrep/exactalg.hpp"

namespace lmrep {

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed = 0) : s_(seed) {}

  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do v = next();
    while (v >= limit);
    return v % bound;
  }

  // Child stream keyed by `tag`; the parent state is not advanced.
  SplitMix64 split(uint64_t tag) const {
    SplitMix64 c(s_ ^ (0xd1b54a32d192ed03ULL * (tag + 1)));
    c.next();
    return c;
  }

 private:
  uint64_t s_;
};

inline Mat random_mat(size_t r, size_t c, uint32_t p, SplitMix64& rng) {
  Mat m(r, c, p);
  for (auto& x : m.data()) x = static_cast<uint32_t>(rng.below(p));
  return m;
}

inline Mat random_invertible(size_t n, uint32_t p, SplitMix64& rng) {
  for (;;) {
    Mat m = random_mat(n, n, p, rng);
    if (!det(m).is_zero()) return m;
  }
}

}  // namespace lmrep
