#pragma once

#include <array>

#include "holab/lie.hpp"
#include "holab/matrix.hpp"

namespace holab {

// The su(2) basis used throughout: E1 = [[0,-1],[1,0]], E2 = [[0,i],[i,0]],
// E3 = [[-i,0],[0,i]], orthonormal for the normalized trace metric, with
// [E1,E2] = 2E3, [E3,E1] = 2E2, [E3,E2] = -2E1. In quaternion language
// E1, E2, E3 are j, k, i respectively.
CMatrix su2_e1();
CMatrix su2_e2();
CMatrix su2_e3();

// A unit quaternion w1 + w2 i + w3 j + w4 k together with its 2x2 special
// unitary realization [[w1 - i w2, -w3 + i w4], [w3 + i w4, w1 + i w2]].
struct Su2 {
  double w1 = 1.0, w2 = 0.0, w3 = 0.0, w4 = 0.0;

  // Checks unit norm to `tol`.
  static Su2 make(double w1, double w2, double w3, double w4,
                  double tol = 1e-12);
  // Reads the quaternion coordinates off a special unitary 2x2 matrix.
  static Su2 from_matrix(const CMatrix& u, double tol = 1e-10);

  CMatrix matrix() const;            // 2x2 complex realization
  Su2 operator*(const Su2& o) const; // Hamilton product
  Su2 conjugate() const;             // quaternion conjugate (inverse)

  // Coefficients (a, b, c) with this = exp(a E1 + b E2 + c E3), angle in
  // [0, pi]. At w = -I the rotation axis is undefined; the convention is
  // axis E1, i.e. (pi, 0, 0).
  std::array<double, 3> log_coeffs() const;

  double norm() const;
};

// The "i-conjugate": flip the sign of the i-component w2.
Su2 i_conjugate(const Su2& w);

// The model surface point
// t(x, y) = [[cos x, -sin x e^{-iy}], [sin x e^{iy}, cos x]]
//         = exp(x (cos y E1 + sin y E2)).
Su2 t_point(double x, double y);

// Hopf-type projection p(w) = w * i_conjugate(w). The image has zero
// i-component (the 2-sphere slice), p(w v) = p(w) exactly for fiber
// elements v = exp(z E3), and p restricted to t-points is the squaring map
// p(t(x, y)) = t-form at (2x, y).
Su2 hopf_p(const Su2& w);

struct ConformalRatios {
  double ratio1 = 0.0;  // |d/dx through p| / |d/dx in the coset|
  double ratio2 = 0.0;  // |d/dy through p| / |d/dy in the coset|
};

// Numerical check that the sphere model map is conformal with factor 2:
// differentiates the coset chart (x, y) -> t(x, y) U(1) and the projected
// chart (x, y) -> p(t(x, y)) by central differences and returns the two
// derivative-norm ratios (both 2). The y-direction degenerates where
// sin 2x = 0 (x = 0 or pi/2), which is a DomainError.
ConformalRatios conformal_h_check(double x, double y);

// The Lie algebra monomorphism su(2) -> u(n+m) determined by X:
// a E1 + b E2 + c E3 -> (a/sqrt(lambda)) hat(X) + (b/sqrt(lambda)) hat(iX)
//                       + (c/lambda) K.
CMatrix f_alg(double a, double b, double c, const UmnElement& x);

// The induced group monomorphism SU(2) -> U(n+m):
// f_group(w) = matrix_exp(f_alg(log w)). A homomorphism; maps the fiber
// circle exp(z E3) into block-diagonal U(n) x U(m).
CMatrix f_group(const Su2& w, const UmnElement& x);

// Closed form for the image of the fiber one-parameter group:
// fiber_exp(theta, X) = diag-blocks(e^{i theta} I_n,
//                                   I_m + ((e^{-i theta} - 1)/lambda) XX^*),
// equal to matrix_exp(-(theta/lambda) K).
CMatrix fiber_exp(double theta, const UmnElement& x);

// The conformal factor sqrt(2n/(n+m)) of the embedded sphere. Also asserts
// the three basis-image norms |hat(X)/sqrt(lambda)|, |hat(iX)/sqrt(lambda)|,
// |K/lambda| all equal the factor to 1e-12 under the normalized trace
// metric on u(n+m).
double conformal_factor(const UmnElement& x);

// The bare value sqrt(2n/(n+m)).
double conformal_factor_value(Eigen::Index n, Eigen::Index m);

}  // namespace holab
