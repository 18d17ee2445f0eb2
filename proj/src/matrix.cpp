#include "holab/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace holab {

double max_abs(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double max_abs_real(const RMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool skew_check(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(CMatrix(a.adjoint() + a)) <= tol;
}

bool unitary_check(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  CMatrix gram = u.adjoint() * u;
  gram -= CMatrix::Identity(u.rows(), u.cols());
  return max_abs(gram) <= tol;
}

SkewHermitian::SkewHermitian(CMatrix a, double tol) : mat_(std::move(a)) {
  if (mat_.rows() != mat_.cols())
    throw DimensionError("SkewHermitian: matrix must be square");
  if (!skew_check(mat_, tol))
    throw DomainError("SkewHermitian: matrix is not skew-Hermitian");
}

double inner_product(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw DimensionError("inner_product: operands must be square");
  if (a.rows() != b.rows())
    throw DimensionError("inner_product: operands must have equal size");
  const double k = static_cast<double>(a.rows());
  // Re Tr(a^* b) = sum_ij Re(conj(a_ij) b_ij); no matrix product needed.
  return a.cwiseProduct(b.conjugate()).sum().real() / k;
}

double inner_product_real(const RMatrix& c, const RMatrix& d) {
  if (c.rows() != c.cols() || d.rows() != d.cols())
    throw DimensionError("inner_product_real: operands must be square");
  if (c.rows() != d.rows())
    throw DimensionError("inner_product_real: operands must have equal size");
  if (c.rows() % 2 != 0)
    throw DimensionError("inner_product_real: size must be even (2k x 2k)");
  return c.cwiseProduct(d).sum() / static_cast<double>(c.rows());
}

RMatrix real_embedding(const CMatrix& a) {
  RMatrix r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double x = a(i, j).real();
      const double y = a(i, j).imag();
      r(2 * i, 2 * j) = x;
      r(2 * i, 2 * j + 1) = -y;
      r(2 * i + 1, 2 * j) = y;
      r(2 * i + 1, 2 * j + 1) = x;
    }
  }
  return r;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("commutator: operands must be square of equal size");
  return a * b - b * a;
}

static void check_block_shape(const CMatrix& a, const BlockShape& shape,
                              const char* who) {
  if (a.rows() != a.cols() || a.rows() != shape.total())
    throw DimensionError(std::string(who) + ": matrix size does not match block shape");
}

CMatrix proj_h(const CMatrix& a, const BlockShape& shape) {
  check_block_shape(a, shape, "proj_h");
  CMatrix r = CMatrix::Zero(a.rows(), a.cols());
  r.topLeftCorner(shape.n, shape.n) = a.topLeftCorner(shape.n, shape.n);
  r.bottomRightCorner(shape.m, shape.m) = a.bottomRightCorner(shape.m, shape.m);
  return r;
}

CMatrix proj_m(const CMatrix& a, const BlockShape& shape) {
  check_block_shape(a, shape, "proj_m");
  CMatrix r = CMatrix::Zero(a.rows(), a.cols());
  r.topRightCorner(shape.n, shape.m) = a.topRightCorner(shape.n, shape.m);
  r.bottomLeftCorner(shape.m, shape.n) = a.bottomLeftCorner(shape.m, shape.n);
  return r;
}

// Scaling-and-squaring with the degree-13 Pade approximant
// (coefficients and the theta_13 switch-over radius from Higham,
// "The scaling and squaring method for the matrix exponential revisited").
CMatrix matrix_exp(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("matrix_exp: matrix must be square");
  const Eigen::Index k = a.rows();
  const CMatrix id = CMatrix::Identity(k, k);
  if (k == 0) return a;

  static const double b[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  CMatrix x = a;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    x /= std::pow(2.0, squarings);
  }

  const CMatrix x2 = x * x;
  const CMatrix x4 = x2 * x2;
  const CMatrix x6 = x2 * x4;

  CMatrix u = x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) +
                   b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
  CMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) +
              b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  CMatrix r = Eigen::PartialPivLU<CMatrix>(v - u).solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

CMatrix matrix_exp_series(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("matrix_exp_series: matrix must be square");
  const Eigen::Index k = a.rows();
  if (k == 0) return a;

  // Scale until the norm is small, sum the Taylor series to stagnation,
  // undo the scaling by repeated squaring.
  int squarings = 0;
  double norm = max_abs(a);
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  CMatrix x = a / std::pow(2.0, squarings);

  CMatrix sum = CMatrix::Identity(k, k);
  CMatrix term = CMatrix::Identity(k, k);
  for (int j = 1; j <= 60; ++j) {
    term = (term * x) / static_cast<double>(j);
    sum += term;
    if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(sum))) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace holab
