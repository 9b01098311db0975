#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace riesz {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One independent stream per (seed, stream id). Batches of a Monte-Carlo run
// each own a stream, so results do not depend on the thread count.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x5851F42D4C957F2DULL))) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kMaxLatticeDim = 8;

// Randomly shifted Kronecker (additive recurrence) point set using the
// generalized golden ratio of the requested dimension. Coordinates are kept
// in 64-bit fixed point so that point k is exact for any k.
class KroneckerLattice {
 public:
  KroneckerLattice(int dim, Rng& rng);

  int dim() const { return dim_; }

  void point(std::uint64_t k, double* out) const {
    for (int j = 0; j < dim_; ++j) {
      const std::uint64_t x = shift_[j] + k * step_[j];
      out[j] = static_cast<double>(x >> 11) * 0x1.0p-53;
    }
  }

 private:
  int dim_;
  std::array<std::uint64_t, kMaxLatticeDim> step_{};
  std::array<std::uint64_t, kMaxLatticeDim> shift_{};
};

}  // namespace riesz
