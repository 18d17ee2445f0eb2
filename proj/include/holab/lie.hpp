#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "holab/matrix.hpp"

namespace holab {

// An m x n complex matrix X with X^*X = lambda I_n for some lambda > 0
// (the columns are sqrt(lambda) times an orthonormal n-frame in C^m).
// Construct through validate_umn / random_umn so the invariant is checked.
struct UmnElement {
  CMatrix x;       // m x n
  double lambda;   // the scalar in X^*X = lambda I_n

  Eigen::Index m() const { return x.rows(); }
  Eigen::Index n() const { return x.cols(); }
  BlockShape shape() const { return BlockShape(x.cols(), x.rows()); }
};

// Checks X^*X = lambda I_n (lambda = Tr(X^*X)/n) to `tol` and returns the
// element. Throws TrivialError when X is (numerically) zero, NotUmnError
// when X^*X is not a scalar matrix.
UmnElement validate_umn(const CMatrix& x, double tol = kStructTol);

// Deterministic random element: orthonormalizes a seeded complex Gaussian
// m x n matrix and scales by sqrt(lambda). Requires n <= m, lambda > 0.
UmnElement random_umn(Eigen::Index m, Eigen::Index n, double lambda,
                      std::uint64_t seed);

// The scalar mu with X^*Y = mu I_n (mu = Tr(X^*Y)/n). Throws NotScalarError
// when X^*Y is not scalar to `tol`.
Complex pair_mu(const UmnElement& x, const CMatrix& y, double tol = kStructTol);

// The hat embedding of M_{m,n}(C) onto the off-diagonal part of u(n+m):
// X -> [[0, -X^*], [X, 0]], an (n+m) x (n+m) skew-Hermitian matrix with
// the u(n) factor in the upper-left block.
CMatrix hat(const CMatrix& x);

// Inverse of hat on its image: extracts the lower-left m x n block and
// checks the matrix actually has hat form (square, diagonal blocks zero,
// upper-right block = -X^*).
CMatrix unhat(const CMatrix& a, const BlockShape& shape,
              double tol = kStructTol);

// K = diag(-i lambda I_n, i X X^*), the block-diagonal element with
// [X-hat, (iX)-hat] = 2K, [K, X-hat] = 2 lambda (iX)-hat and
// [K, (iX)-hat] = -2 lambda X-hat. The three identities are verified to
// 1e-12 on every call.
CMatrix k_matrix(const UmnElement& x);

// [[u, v], w] for same-size square matrices (intended for hat elements;
// the result lies back in hat form whenever the inputs do).
CMatrix triple_bracket_direct(const CMatrix& u, const CMatrix& v,
                              const CMatrix& w);

// The m x n matrix Z with hat(Z) = [[hat(X), hat(Y)], hat(X)], evaluated
// column-wise from inner products of the columns of X and Y (no (n+m)-sized
// products): Z_k = sum_j X_j (-2 h(Y_j, X_k) + h(X_j, Y_k))
//                + sum_j Y_j h(X_j, X_k),   h(v, w) = v^* w.
CMatrix triple_bracket_formula(const CMatrix& x, const CMatrix& y);

// Totally-geodesic 2-planes in hat coordinates.
struct FlatPair {
  UmnElement x;
  UmnElement y;  // X^*Y = mu I_n with mu real; Y^*Y = eta I_n
  double mu = 0.0;
  double eta = 1.0;
};
struct HopfDisk {
  UmnElement x;  // the plane Span_R{X-hat, (iX)-hat}
};
using GeodesicSurface = std::variant<FlatPair, HopfDisk>;

// Builds a flat partner Y = (mu/lambda) X + c W with W a seeded n-frame
// orthogonal to the columns of X and c = sqrt(eta - mu^2/lambda); the
// generated X has lambda = 1. Requires mu real, eta > mu^2, and room for
// the orthogonal frame: 2n <= m (DimensionObstructionError otherwise).
FlatPair flat_pair_generate(Eigen::Index m, Eigen::Index n, double mu,
                            double eta, std::uint64_t seed);

// A general pair of frame elements with complex pairing scalar; used for
// planes that are NOT totally geodesic (FlatPair requires mu real).
struct SurfacePair {
  UmnElement x;
  UmnElement y;
  Complex mu;
  double eta = 1.0;
};

// A pair whose plane fails the bracket-closure criterion:
// Y = mu X + c W with Im(mu) != 0 (so X^*Y is a non-real scalar) and iX
// automatically outside Span_R{X, Y}. Same room constraint 2n <= m.
SurfacePair counterexample_pair(Eigen::Index m, Eigen::Index n, Complex mu,
                                double eta, std::uint64_t seed);

struct ClosureVerdict {
  bool is_geodesic = false;
  double residual = 0.0;  // max relative least-squares residual over triples
};

// Bracket-closure criterion for a totally geodesic plane: for every ordered
// triple (U, V, W) from `basis`, the m-part of [[U-hat, V-hat], W-hat] must
// lie in Span_R{basis hats}. Membership is tested by real least squares on
// the flattened matrices; residuals are relative (0/0 := 0). The basis must
// be R-linearly independent (Gram rank check; DependentBasisError).
ClosureVerdict span_closure_check(const std::vector<CMatrix>& basis,
                                  double tol = kStructTol);

// Convenience overloads building the basis from a surface descriptor:
// HopfDisk -> {X, iX}, FlatPair -> {X, Y}.
ClosureVerdict span_closure_check(const GeodesicSurface& surface,
                                  double tol = kStructTol);

}  // namespace holab
