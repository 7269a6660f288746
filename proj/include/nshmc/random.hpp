#pragma once

#include <cstdint>
#include <random>

namespace nshmc {

/// Seedable random stream passed explicitly to every stochastic operation.
///
/// Wraps a 64-bit Mersenne twister. Two streams constructed from the same
/// seed produce identical draws; streams are not shared between chains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return normal_(engine_); }

  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

  std::mt19937_64& engine() { return engine_; }

  /// Seed for the stream with index `stream` derived from a master seed.
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nshmc
