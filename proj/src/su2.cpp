#include "holab/su2.hpp"

#include <cmath>

namespace holab {

CMatrix su2_e1() {
  CMatrix e(2, 2);
  e << Complex(0, 0), Complex(-1, 0), Complex(1, 0), Complex(0, 0);
  return e;
}

CMatrix su2_e2() {
  CMatrix e(2, 2);
  e << Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0);
  return e;
}

CMatrix su2_e3() {
  CMatrix e(2, 2);
  e << Complex(0, -1), Complex(0, 0), Complex(0, 0), Complex(0, 1);
  return e;
}

double Su2::norm() const {
  return std::sqrt(w1 * w1 + w2 * w2 + w3 * w3 + w4 * w4);
}

Su2 Su2::make(double w1, double w2, double w3, double w4, double tol) {
  Su2 w{w1, w2, w3, w4};
  if (std::abs(w.norm() - 1.0) > tol)
    throw DomainError("Su2::make: quaternion is not unit length");
  return w;
}

Su2 Su2::from_matrix(const CMatrix& u, double tol) {
  if (u.rows() != 2 || u.cols() != 2)
    throw DimensionError("Su2::from_matrix: need a 2x2 matrix");
  // Average the redundant entries; then verify the reconstruction.
  Su2 w;
  w.w1 = (u(0, 0).real() + u(1, 1).real()) / 2.0;
  w.w2 = (u(1, 1).imag() - u(0, 0).imag()) / 2.0;
  w.w3 = (u(1, 0).real() - u(0, 1).real()) / 2.0;
  w.w4 = (u(1, 0).imag() + u(0, 1).imag()) / 2.0;
  if (std::abs(w.norm() - 1.0) > tol || max_abs(CMatrix(w.matrix() - u)) > tol)
    throw DomainError("Su2::from_matrix: matrix is not special unitary");
  return w;
}

CMatrix Su2::matrix() const {
  CMatrix u(2, 2);
  u(0, 0) = Complex(w1, -w2);
  u(0, 1) = Complex(-w3, w4);
  u(1, 0) = Complex(w3, w4);
  u(1, 1) = Complex(w1, w2);
  return u;
}

Su2 Su2::operator*(const Su2& o) const {
  // Hamilton product, i-j-k order matching the matrix realization.
  Su2 r;
  r.w1 = w1 * o.w1 - w2 * o.w2 - w3 * o.w3 - w4 * o.w4;
  r.w2 = w1 * o.w2 + w2 * o.w1 + w3 * o.w4 - w4 * o.w3;
  r.w3 = w1 * o.w3 - w2 * o.w4 + w3 * o.w1 + w4 * o.w2;
  r.w4 = w1 * o.w4 + w2 * o.w3 - w3 * o.w2 + w4 * o.w1;
  return r;
}

Su2 Su2::conjugate() const { return Su2{w1, -w2, -w3, -w4}; }

std::array<double, 3> Su2::log_coeffs() const {
  const double s = std::sqrt(w2 * w2 + w3 * w3 + w4 * w4);
  if (s == 0.0) {
    // +-I: at -I the axis is genuinely undefined; fix it to E1.
    if (w1 < 0.0) return {M_PI, 0.0, 0.0};
    return {0.0, 0.0, 0.0};
  }
  const double theta = std::atan2(s, w1);
  const double factor = theta / s;  // -> 1 smoothly near the identity
  // E1 = j, E2 = k, E3 = i.
  return {factor * w3, factor * w4, factor * w2};
}

Su2 i_conjugate(const Su2& w) { return Su2{w.w1, -w.w2, w.w3, w.w4}; }

Su2 t_point(double x, double y) {
  return Su2{std::cos(x), 0.0, std::sin(x) * std::cos(y),
             std::sin(x) * std::sin(y)};
}

Su2 hopf_p(const Su2& w) { return w * i_conjugate(w); }

namespace {

// Norm of the su(2) velocity of a matrix-valued curve at t = 0 by
// 2nd-order central differences (the verification is deliberately
// independent of closed-form derivatives). `quotient` removes the fiber
// direction E3 before taking the norm.
template <typename Curve>
double velocity_norm(Curve&& curve, bool quotient) {
  const double h = 1e-6;
  const CMatrix w0 = curve(0.0);
  CMatrix vel = (curve(h) - curve(-h)) / (2.0 * h);
  CMatrix m = w0.adjoint() * vel;  // Maurer-Cartan form of the curve
  if (quotient) {
    const CMatrix e3 = su2_e3();
    m -= inner_product(m, e3) * e3;
  }
  return std::sqrt(inner_product(m, m));
}

}  // namespace

ConformalRatios conformal_h_check(double x, double y) {
  if (std::abs(std::sin(2.0 * x)) < 1e-8)
    throw DomainError(
        "conformal_h_check: y-direction is degenerate where sin 2x = 0");

  auto coset_x = [&](double s) { return t_point(x + s, y).matrix(); };
  auto coset_y = [&](double s) { return t_point(x, y + s).matrix(); };
  auto proj_x = [&](double s) { return hopf_p(t_point(x + s, y)).matrix(); };
  auto proj_y = [&](double s) { return hopf_p(t_point(x, y + s)).matrix(); };

  ConformalRatios r;
  r.ratio1 = velocity_norm(proj_x, false) / velocity_norm(coset_x, true);
  r.ratio2 = velocity_norm(proj_y, false) / velocity_norm(coset_y, true);
  return r;
}

CMatrix f_alg(double a, double b, double c, const UmnElement& x) {
  const Complex i(0.0, 1.0);
  const double rl = std::sqrt(x.lambda);
  return (a / rl) * hat(x.x) + (b / rl) * hat(CMatrix(i * x.x)) +
         (c / x.lambda) * k_matrix(x);
}

CMatrix f_group(const Su2& w, const UmnElement& x) {
  const std::array<double, 3> abc = w.log_coeffs();
  return matrix_exp(f_alg(abc[0], abc[1], abc[2], x));
}

CMatrix fiber_exp(double theta, const UmnElement& x) {
  const Eigen::Index n = x.n();
  const Eigen::Index m = x.m();
  const Complex i(0.0, 1.0);
  CMatrix u = CMatrix::Zero(n + m, n + m);
  u.topLeftCorner(n, n) = std::exp(i * theta) * CMatrix::Identity(n, n);
  u.bottomRightCorner(m, m) =
      CMatrix::Identity(m, m) +
      ((std::exp(-i * theta) - 1.0) / x.lambda) * (x.x * x.x.adjoint());
  return u;
}

double conformal_factor_value(Eigen::Index n, Eigen::Index m) {
  return std::sqrt(2.0 * static_cast<double>(n) / static_cast<double>(n + m));
}

double conformal_factor(const UmnElement& x) {
  const double alpha = conformal_factor_value(x.n(), x.m());
  const Complex i(0.0, 1.0);
  const double rl = std::sqrt(x.lambda);
  const CMatrix b1 = hat(x.x) / rl;
  const CMatrix b2 = hat(CMatrix(i * x.x)) / rl;
  const CMatrix b3 = k_matrix(x) / x.lambda;
  for (const CMatrix* b : {&b1, &b2, &b3}) {
    const double norm = std::sqrt(inner_product(*b, *b));
    if (std::abs(norm - alpha) > 1e-12)
      throw Error("conformal_factor: basis-image norm mismatch");
  }
  return alpha;
}

}  // namespace holab
