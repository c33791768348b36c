#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lgfdm/linalg.hpp"

namespace lgfdm {

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random stream. Substreams are derived by hashing a
/// (master, a, b) tuple, so workers can draw in any order without
/// touching each other's sequences. Gaussian variates come from an
/// explicit Box-Muller transform rather than std::normal_distribution,
/// keeping output independent of the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng substream(std::uint64_t master, std::uint64_t a, std::uint64_t b);

  /// Uniform double in [0, 1).
  double uniform01();

  /// Standard normal.
  double gaussian();

  /// Circularly-symmetric complex Gaussian with total variance sigma2
  /// (sigma2/2 per real dimension).
  cplx cgaussian(double sigma2);

  int bit();
  std::vector<int> bits(std::size_t count);

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lgfdm
