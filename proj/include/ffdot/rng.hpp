#pragma once

#include <cstdint>

namespace ffdot {

// splitmix64 finalizer. Every seed derivation in the project goes through
// this one mixing function so outputs are reproducible across platforms
// and worker counts.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-trial seed: master seed, a stream id (cell index), and an index
// within the stream (trial number).
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
  return mix64(mix64(master ^ 0x5DEECE66DULL ^ stream) + index);
}

// Deterministic generator over the splitmix64 sequence. Not fancy, but
// identical on every platform, which is what the harness needs.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, n) by 128-bit multiply-shift; the bias at
  // desk-scale n is far below anything the experiments can see.
  uint64_t below(uint64_t n) {
    return uint64_t((unsigned __int128)(next()) * n >> 64);
  }

  // Inclusive range [lo, hi].
  int64_t range(int64_t lo, int64_t hi) {
    return lo + int64_t(below(uint64_t(hi - lo + 1)));
  }

 private:
  uint64_t state_;
};

}  // namespace ffdot
