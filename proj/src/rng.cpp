#include "holab/rng.hpp"

#include <cmath>

namespace holab {

namespace {

// splitmix64 step (Steele, Lea & Flood; public-domain reference constants).
std::uint64_t mix(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

std::uint64_t Rng::next_u64() { return mix(state_); }

double Rng::uniform() {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 is kept away from 0 so the log is finite.
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

CMatrix Rng::cgaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = cgaussian();
  return a;
}

Rng Rng::fork(std::uint64_t tag) const {
  // Derive the substream seed from (seed, tag) only, never from the current
  // position, so forks are order-independent.
  std::uint64_t s = seed_ ^ (0xA24BAED4963EE407ULL * (tag + 1));
  const std::uint64_t sub = mix(s) ^ mix(s);
  return Rng(sub);
}

}  // namespace holab
