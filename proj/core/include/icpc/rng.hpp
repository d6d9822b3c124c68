#pragma once

#include <cstdint>

namespace icpc {

/// SplitMix64: fixed, portable 64-bit generator used wherever seeded
/// deterministic choices are required (baselines). The exact algorithm is
/// part of the output contract, so results are bit-reproducible across
/// platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish draw in [0, bound); bound must be nonzero. Modulo reduction
  /// is deliberate: determinism, not statistical purity, is the contract.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace icpc
