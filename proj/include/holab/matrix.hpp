#pragma once

#include <Eigen/Dense>
#include <complex>

#include "holab/errors.hpp"

namespace holab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Default tolerance for structural checks (skewness, unitarity, scalarity).
inline constexpr double kStructTol = 1e-10;

// Dimensions (n, m) of the canonical block split of u(n+m): the upper-left
// n x n block is the u(n) factor, the lower-right m x m block the u(m)
// factor. Matrices carrying this split have size (n+m) x (n+m).
struct BlockShape {
  Eigen::Index n = 0;
  Eigen::Index m = 0;

  BlockShape(Eigen::Index n_, Eigen::Index m_) : n(n_), m(m_) {
    if (n < 1 || m < 1) throw DimensionError("BlockShape: n and m must be >= 1");
  }
  Eigen::Index total() const { return n + m; }
};

// Entrywise max-abs norm; the norm used by structural checks and test
// deviations throughout.
double max_abs(const CMatrix& a);
double max_abs_real(const RMatrix& a);

// True iff a^* = -a entrywise to `tol`.
bool skew_check(const CMatrix& a, double tol = kStructTol);

// True iff u^* u = I entrywise to `tol`.
bool unitary_check(const CMatrix& u, double tol = kStructTol);

// A square complex matrix checked to be skew-Hermitian on construction.
class SkewHermitian {
 public:
  explicit SkewHermitian(CMatrix a, double tol = kStructTol);

  const CMatrix& mat() const { return mat_; }
  Eigen::Index size() const { return mat_.rows(); }

 private:
  CMatrix mat_;
};

// Normalized trace-form metric on u(k): <a, b> = (1/k) Re Tr(a^* b),
// where k is the common matrix size. Symmetric and positive definite.
double inner_product(const CMatrix& a, const CMatrix& b);

// Metric on the real embedding of gl(k, C) in gl(2k, R):
// <c, d> = (1/(2k)) Tr(c^T d) with 2k the common row count.
double inner_product_real(const RMatrix& c, const RMatrix& d);

// Real embedding of a complex matrix: every entry x + iy becomes the
// 2x2 real block [[x, -y], [y, x]], so a k x k complex matrix maps to a
// 2k x 2k real matrix. Multiplicative, and an isometry for the two
// inner products above.
RMatrix real_embedding(const CMatrix& a);

// ab - ba.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Block projections onto the two factors of the canonical decomposition
// u(n+m) = h + m: proj_h keeps the diagonal n x n and m x m blocks,
// proj_m keeps the off-diagonal blocks. proj_h + proj_m = identity.
CMatrix proj_h(const CMatrix& a, const BlockShape& shape);
CMatrix proj_m(const CMatrix& a, const BlockShape& shape);

// Matrix exponential by scaling-and-squaring with the degree-13 Pade
// approximant. Exact group element for skew-Hermitian input up to
// rounding; defined for any square complex matrix.
CMatrix matrix_exp(const CMatrix& a);

// Independent slow route: scaled Taylor series summed to machine
// stagnation. Kept as a cross-check oracle for matrix_exp; do not use in
// hot paths.
CMatrix matrix_exp_series(const CMatrix& a);

}  // namespace holab
