#pragma once

#include <cstdint>

namespace torusflow {

/// Counter-based generator (splitmix64 finalizer on seed/counter pairs):
/// stateless per draw, so streams are platform-independent and reproducible
/// from (seed, counter) alone.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))), counter_(0) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * ++counter_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace torusflow
