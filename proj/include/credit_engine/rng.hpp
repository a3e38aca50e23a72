#pragma once

#include <cstdint>

namespace credit_engine::sim {

// splitmix64 finalizer: a bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Small splittable generator (splitmix64). Substreams start at
// well-separated mixed states, so per-sample streams can be handed to
// workers in any order without changing the numbers drawn.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix64(z);
  }

  // Uniform on [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Deterministic substream for one sample, worker, or chain step.
inline RngStream substream(std::uint64_t seed, std::uint64_t index) {
  return RngStream(mix64(seed ^ mix64(index + 0x6a09e667f3bcc909ULL)));
}

}  // namespace credit_engine::sim
