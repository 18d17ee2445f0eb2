#include "holab/lie.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "holab/rng.hpp"

namespace holab {

UmnElement validate_umn(const CMatrix& x, double tol) {
  if (x.rows() < 1 || x.cols() < 1)
    throw DimensionError("validate_umn: empty matrix");
  // Triviality is tested before scalarity so an (approximately) zero X is
  // reported as Trivial, not NotUmn.
  if (max_abs(x) <= tol) throw TrivialError("validate_umn: X is numerically zero");
  const Eigen::Index n = x.cols();
  CMatrix gram = x.adjoint() * x;
  const double lambda = gram.trace().real() / static_cast<double>(n);
  CMatrix dev = gram - lambda * CMatrix::Identity(n, n);
  if (max_abs(dev) > tol)
    throw NotUmnError("validate_umn: X^*X is not a scalar matrix");
  if (lambda <= tol)
    throw TrivialError("validate_umn: X^*X scalar is not positive");
  return UmnElement{x, lambda};
}

UmnElement random_umn(Eigen::Index m, Eigen::Index n, double lambda,
                      std::uint64_t seed) {
  if (n > m)
    throw DimensionError("random_umn: need n <= m for an n-frame in C^m");
  if (n < 1 || m < 1) throw DimensionError("random_umn: need m, n >= 1");
  if (!(lambda > 0.0)) throw DomainError("random_umn: lambda must be positive");
  Rng rng(seed);
  CMatrix g = rng.cgaussian_matrix(m, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, n);
  return validate_umn(std::sqrt(lambda) * q);
}

Complex pair_mu(const UmnElement& x, const CMatrix& y, double tol) {
  if (y.rows() != x.m() || y.cols() != x.n())
    throw DimensionError("pair_mu: Y shape must match X");
  const Eigen::Index n = x.n();
  CMatrix prod = x.x.adjoint() * y;
  const Complex mu = prod.trace() / static_cast<double>(n);
  CMatrix dev = prod - mu * CMatrix::Identity(n, n);
  if (max_abs(dev) > tol)
    throw NotScalarError("pair_mu: X^*Y is not a scalar matrix");
  return mu;
}

CMatrix hat(const CMatrix& x) {
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  CMatrix a = CMatrix::Zero(n + m, n + m);
  a.topRightCorner(n, m) = -x.adjoint();
  a.bottomLeftCorner(m, n) = x;
  return a;
}

CMatrix unhat(const CMatrix& a, const BlockShape& shape, double tol) {
  if (a.rows() != a.cols() || a.rows() != shape.total())
    throw DimensionError("unhat: matrix size does not match block shape");
  CMatrix x = a.bottomLeftCorner(shape.m, shape.n);
  CMatrix rebuilt = hat(x);
  if (max_abs(CMatrix(a - rebuilt)) > tol)
    throw DomainError("unhat: matrix is not of hat form");
  return x;
}

CMatrix k_matrix(const UmnElement& x) {
  const Eigen::Index n = x.n();
  const Eigen::Index m = x.m();
  const Complex i(0.0, 1.0);
  CMatrix k = CMatrix::Zero(n + m, n + m);
  k.topLeftCorner(n, n) = -i * x.lambda * CMatrix::Identity(n, n);
  k.bottomRightCorner(m, m) = i * (x.x * x.x.adjoint());

  // The defining bracket identities; they hold exactly in exact arithmetic,
  // so a violation means the input is corrupt.
  const CMatrix xh = hat(x.x);
  const CMatrix ixh = hat(CMatrix(i * x.x));
  const double check = 1e-12 * std::max(1.0, x.lambda * x.lambda);
  if (max_abs(CMatrix(commutator(xh, ixh) - 2.0 * k)) > check ||
      max_abs(CMatrix(commutator(k, xh) - 2.0 * x.lambda * ixh)) > check ||
      max_abs(CMatrix(commutator(k, ixh) + 2.0 * x.lambda * xh)) > check)
    throw Error("k_matrix: bracket identities failed verification");
  return k;
}

CMatrix triple_bracket_direct(const CMatrix& u, const CMatrix& v,
                              const CMatrix& w) {
  return commutator(commutator(u, v), w);
}

CMatrix triple_bracket_formula(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("triple_bracket_formula: shapes must match");
  const Eigen::Index n = x.cols();
  // Column-wise evaluation with h(v, w) = v^* w (Eigen's dot conjugates the
  // first operand), never forming (n+m)-sized products. This keeps the
  // route independent of triple_bracket_direct.
  CMatrix z = CMatrix::Zero(x.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex c1 =
          -2.0 * y.col(j).dot(x.col(k)) + x.col(j).dot(y.col(k));
      const Complex c2 = x.col(j).dot(x.col(k));
      z.col(k) += x.col(j) * c1 + y.col(j) * c2;
    }
  }
  return z;
}

namespace {

// Seeded n-frame orthogonal to the columns of x (which has x^*x = lambda I).
CMatrix orthogonal_frame(const UmnElement& x, Rng& rng) {
  const Eigen::Index m = x.m();
  const Eigen::Index n = x.n();
  CMatrix g = rng.cgaussian_matrix(m, n);
  g -= x.x * (x.x.adjoint() * g) / x.lambda;  // remove the X-components
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix w = qr.householderQ() * CMatrix::Identity(m, n);
  // Guard against a (measure-zero) degenerate draw.
  if (max_abs(CMatrix(w.adjoint() * w - CMatrix::Identity(n, n))) > 1e-10 ||
      max_abs(CMatrix(x.x.adjoint() * w)) > 1e-10)
    throw ConvergenceError("orthogonal_frame: degenerate random draw");
  return w;
}

}  // namespace

FlatPair flat_pair_generate(Eigen::Index m, Eigen::Index n, double mu,
                            double eta, std::uint64_t seed) {
  if (2 * n > m)
    throw DimensionObstructionError(
        "flat_pair_generate: an n-frame orthogonal to X needs 2n <= m");
  if (!(eta > mu * mu))
    throw DomainError("flat_pair_generate: need eta > mu^2 (with lambda = 1)");
  Rng rng(seed);
  Rng rx = rng.fork(1);
  Rng rw = rng.fork(2);
  UmnElement x = random_umn(m, n, 1.0, rx.next_u64());
  CMatrix w = orthogonal_frame(x, rw);
  const double c = std::sqrt(eta - mu * mu);
  CMatrix y = mu * x.x + c * w;
  return FlatPair{x, validate_umn(y), mu, eta};
}

SurfacePair counterexample_pair(Eigen::Index m, Eigen::Index n, Complex mu,
                                double eta, std::uint64_t seed) {
  if (2 * n > m)
    throw DimensionObstructionError(
        "counterexample_pair: an n-frame orthogonal to X needs 2n <= m");
  if (mu.imag() == 0.0)
    throw DomainError("counterexample_pair: mu must have nonzero imaginary part");
  if (!(eta > std::norm(mu)))
    throw DomainError("counterexample_pair: need eta > |mu|^2 (with lambda = 1)");
  Rng rng(seed);
  Rng rx = rng.fork(1);
  Rng rw = rng.fork(2);
  UmnElement x = random_umn(m, n, 1.0, rx.next_u64());
  CMatrix w = orthogonal_frame(x, rw);
  const double c = std::sqrt(eta - std::norm(mu));
  CMatrix y = mu * x.x + c * w;
  return SurfacePair{x, validate_umn(y), mu, eta};
}

namespace {

// Flatten an m x n complex matrix to 2mn real coordinates.
Eigen::VectorXd real_flatten(const CMatrix& a) {
  Eigen::VectorXd v(2 * a.size());
  Eigen::Index p = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      v(p++) = a(i, j).real();
      v(p++) = a(i, j).imag();
    }
  }
  return v;
}

}  // namespace

ClosureVerdict span_closure_check(const std::vector<CMatrix>& basis,
                                  double tol) {
  if (basis.empty()) throw DomainError("span_closure_check: empty basis");
  const Eigen::Index m = basis.front().rows();
  const Eigen::Index n = basis.front().cols();
  for (const CMatrix& b : basis)
    if (b.rows() != m || b.cols() != n)
      throw DimensionError("span_closure_check: mixed shapes in basis");

  const Eigen::Index dim = 2 * m * n;
  const Eigen::Index count = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(dim, count);
  for (Eigen::Index j = 0; j < count; ++j)
    a.col(j) = real_flatten(basis[static_cast<std::size_t>(j)]);

  // R-linear independence via singular values of the flattened basis.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  if (smax <= 0.0 || svd.singularValues()(count - 1) <= 1e-10 * smax)
    throw DependentBasisError("span_closure_check: basis is R-linearly dependent");

  BlockShape shape(n, m);
  std::vector<CMatrix> hats;
  hats.reserve(basis.size());
  for (const CMatrix& b : basis) hats.push_back(hat(b));

  double worst = 0.0;
  for (const CMatrix& hu : hats) {
    for (const CMatrix& hv : hats) {
      for (const CMatrix& hw : hats) {
        CMatrix t = triple_bracket_direct(hu, hv, hw);
        // [[m, m], m] lies back in m, so the data is the lower-left block.
        Eigen::VectorXd b_vec =
            real_flatten(proj_m(t, shape).bottomLeftCorner(m, n));
        const double bnorm = b_vec.norm();
        if (bnorm == 0.0) continue;  // 0/0 := 0
        Eigen::VectorXd coeff = svd.solve(b_vec);
        const double res = (a * coeff - b_vec).norm() / bnorm;
        worst = std::max(worst, res);
      }
    }
  }
  return ClosureVerdict{worst <= tol, worst};
}

ClosureVerdict span_closure_check(const GeodesicSurface& surface, double tol) {
  const Complex i(0.0, 1.0);
  if (std::holds_alternative<HopfDisk>(surface)) {
    const UmnElement& x = std::get<HopfDisk>(surface).x;
    return span_closure_check({x.x, CMatrix(i * x.x)}, tol);
  }
  const FlatPair& fp = std::get<FlatPair>(surface);
  return span_closure_check({fp.x.x, fp.y.x}, tol);
}

}  // namespace holab
