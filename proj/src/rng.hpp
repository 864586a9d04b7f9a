#pragma once

#include <cstdint>

namespace fuzzrel {

// Portable generator: std:: distributions are implementation-defined, and
// outputs here must be identical across platforms for a fixed seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of the i-th independent stream derived from a master seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 mix(master ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
  mix.next();
  return mix.next();
}

}  // namespace fuzzrel
