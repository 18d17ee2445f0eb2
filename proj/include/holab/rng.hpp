#pragma once

#include <cstdint>

#include "holab/matrix.hpp"

namespace holab {

// Deterministic, platform-independent random generator: splitmix64 core
// with Box-Muller gaussians. std::mt19937 + <random> distributions are not
// reproducible across standard libraries, and every randomized test in this
// project freezes its expectations, so the stream must be stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal.
  double gaussian();

  // g1 + i g2 with independent standard normal parts.
  Complex cgaussian();

  // m x n matrix of independent cgaussian() entries, filled row-major.
  CMatrix cgaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  // Independent substream keyed by (original seed, tag). Forking does not
  // advance or depend on this generator's position, so call sites can fork
  // in any order and still get identical streams.
  Rng fork(std::uint64_t tag) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace holab
