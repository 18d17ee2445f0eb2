#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holab/rng.hpp"
#include "holab/su2.hpp"

using namespace holab;

namespace {

const Complex kI(0.0, 1.0);

Su2 random_su2(Rng& rng) {
  while (true) {
    const double c1 = rng.gaussian(), c2 = rng.gaussian();
    const double c3 = rng.gaussian(), c4 = rng.gaussian();
    const double norm = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4);
    if (norm > 0.1) return Su2::make(c1 / norm, c2 / norm, c3 / norm, c4 / norm);
  }
}

double quat_dist(const Su2& a, const Su2& b) {
  return std::max(std::max(std::abs(a.w1 - b.w1), std::abs(a.w2 - b.w2)),
                  std::max(std::abs(a.w3 - b.w3), std::abs(a.w4 - b.w4)));
}

}  // namespace

TEST_CASE("quaternion-matrix dictionary") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const Su2 a = random_su2(rng);
    const Su2 b = random_su2(rng);
    CHECK(unitary_check(a.matrix(), 1e-14));
    // Hamilton product matches the matrix product.
    CHECK(max_abs(CMatrix((a * b).matrix() - a.matrix() * b.matrix())) <
          1e-14);
    // Conjugate is the inverse.
    const Su2 id = a * a.conjugate();
    CHECK(quat_dist(id, Su2::make(1, 0, 0, 0)) < 1e-14);
    // Round trip through the matrix realization.
    CHECK(quat_dist(Su2::from_matrix(a.matrix()), a) < 1e-13);
  }
  CHECK_THROWS_AS(Su2::make(1.0, 1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("basis exponentials and logs") {
  // exp(z E3) is the fiber circle.
  const double z = 1.234;
  const CMatrix fiber = matrix_exp(CMatrix(z * su2_e3()));
  CHECK(std::abs(fiber(0, 0) - std::exp(-kI * z)) < 1e-14);
  const Su2 v = Su2::from_matrix(fiber);
  CHECK(quat_dist(v, Su2::make(std::cos(z), std::sin(z), 0, 0)) < 1e-13);
  const auto logs = v.log_coeffs();
  CHECK(logs[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(logs[1] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(logs[2] == doctest::Approx(z).epsilon(1e-13));

  // The antipode convention.
  const auto minus = Su2::make(-1, 0, 0, 0).log_coeffs();
  CHECK(minus[0] == doctest::Approx(3.141592653589793));
  CHECK(minus[1] == 0.0);
  CHECK(minus[2] == 0.0);

  // Round trip: exp of the log coefficients reproduces the quaternion.
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const Su2 w = random_su2(rng);
    const auto c = w.log_coeffs();
    const CMatrix back = matrix_exp(
        CMatrix(c[0] * su2_e1() + c[1] * su2_e2() + c[2] * su2_e3()));
    CHECK(max_abs(CMatrix(back - w.matrix())) < 1e-12);
  }
}

TEST_CASE("surface points") {
  CHECK(quat_dist(t_point(0.0, 2.1), Su2::make(1, 0, 0, 0)) == 0.0);
  CHECK(quat_dist(t_point(1.5707963267948966, 0.0), Su2::make(0, 0, 1, 0)) <
        1e-15);

  const double x = 0.62, y = 2.4;
  const Su2 t = t_point(x, y);
  CMatrix expect(2, 2);
  expect << std::cos(x), -std::sin(x) * std::exp(-kI * y),
      std::sin(x) * std::exp(kI * y), std::cos(x);
  CHECK(max_abs(CMatrix(t.matrix() - expect)) < 1e-15);

  // t(x, y) = exp(x (cos y E1 + sin y E2)).
  const CMatrix gen = std::cos(y) * su2_e1() + std::sin(y) * su2_e2();
  CHECK(max_abs(CMatrix(t.matrix() - matrix_exp(CMatrix(x * gen)))) < 1e-14);
}

TEST_CASE("projection is fiber-invariant squaring onto the sphere slice") {
  Rng rng(43);
  for (int t = 0; t < 25; ++t) {
    const Su2 w = random_su2(rng);
    CHECK(quat_dist(i_conjugate(i_conjugate(w)), w) == 0.0);

    const Su2 pw = hopf_p(w);
    CHECK(pw.w2 == 0.0);  // exact: the slice coordinate cancels
    CHECK(pw.norm() == doctest::Approx(1.0).epsilon(1e-13));

    const double z = rng.uniform(0.0, 6.28);
    const Su2 fiber = Su2::make(std::cos(z), std::sin(z), 0, 0);
    CHECK(quat_dist(hopf_p(w * fiber), pw) < 1e-15);

    const double x = rng.uniform(0.01, 1.55);
    const double y = rng.uniform(0.0, 6.28);
    CHECK(quat_dist(hopf_p(t_point(x, y)), t_point(2.0 * x, y)) < 1e-15);
  }
}

TEST_CASE("projection halves lengths in the quotient metric") {
  const ConformalRatios r = conformal_h_check(0.5235987755982988, 1.0);
  CHECK(r.ratio1 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.ratio2 == doctest::Approx(2.0).epsilon(1e-6));

  const ConformalRatios r2 = conformal_h_check(1.1, 4.4);
  CHECK(r2.ratio1 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r2.ratio2 == doctest::Approx(2.0).epsilon(1e-6));

  CHECK_THROWS_AS(conformal_h_check(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(conformal_h_check(1.5707963267948966, 0.3), DomainError);
}

TEST_CASE("algebra map preserves brackets") {
  const UmnElement x = random_umn(3, 2, 1.7, 44);
  const CMatrix img[3] = {f_alg(1, 0, 0, x), f_alg(0, 1, 0, x),
                          f_alg(0, 0, 1, x)};
  const CMatrix src[3] = {su2_e1(), su2_e2(), su2_e3()};
  for (int i = 0; i < 3; ++i) {
    CHECK(skew_check(img[i], 1e-12));
    for (int j = 0; j < 3; ++j) {
      const CMatrix lhs = commutator(img[i], img[j]);
      // Structure constants of [E_i, E_j] expanded in the basis.
      const CMatrix bracket = commutator(src[i], src[j]);
      CMatrix rhs = CMatrix::Zero(5, 5);
      for (int k = 0; k < 3; ++k)
        rhs += inner_product(src[k], bracket) * img[k];
      CHECK(max_abs(CMatrix(lhs - rhs)) < 1e-12);
    }
  }
  // R-linearity in the coefficients.
  CHECK(max_abs(CMatrix(f_alg(0.3, -1.2, 0.7, x) -
                        (0.3 * img[0] - 1.2 * img[1] + 0.7 * img[2]))) <
        1e-13);
}

TEST_CASE("group map is a homomorphism into the unitary group") {
  const UmnElement x = random_umn(4, 2, 0.9, 45);
  Rng rng(46);
  for (int t = 0; t < 8; ++t) {
    const Su2 a = random_su2(rng);
    const Su2 b = random_su2(rng);
    const CMatrix fa = f_group(a, x);
    CHECK(unitary_check(fa, 1e-12));
    CHECK(max_abs(CMatrix(f_group(a * b, x) - fa * f_group(b, x))) < 1e-11);
  }

  // The fiber circle lands in the block-diagonal subgroup, on the closed
  // form with opposite phase sign (E3 integrates against the block element).
  const double z = 0.83;
  const Su2 fiber = Su2::make(std::cos(z), std::sin(z), 0, 0);
  const CMatrix fv = f_group(fiber, x);
  CHECK(max_abs(proj_m(fv, x.shape())) < 1e-14);
  CHECK(max_abs(CMatrix(fv - fiber_exp(-z, x))) < 1e-13);

  // Surface points map through the algebra line exp(x(cos y, sin y, 0)).
  const double px = 0.7, py = 2.2;
  const CMatrix lift = f_group(t_point(px, py), x);
  const CMatrix direct = matrix_exp(
      f_alg(px * std::cos(py), px * std::sin(py), 0.0, x));
  CHECK(max_abs(CMatrix(lift - direct)) < 1e-13);
}

TEST_CASE("fiber exponential closed form") {
  const UmnElement e_col = validate_umn([] {
    CMatrix c(2, 1);
    c << 1, 0;
    return c;
  }());
  const CMatrix half_turn = fiber_exp(3.141592653589793, e_col);
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 0) = -1;
  expect(1, 1) = -1;
  expect(2, 2) = 1;
  CHECK(max_abs(CMatrix(half_turn - expect)) < 1e-14);

  const UmnElement x = random_umn(3, 2, 1.4, 47);
  Rng rng(48);
  for (int t = 0; t < 10; ++t) {
    const double theta = rng.uniform(-6.3, 6.3);
    const CMatrix closed = fiber_exp(theta, x);
    CHECK(unitary_check(closed, 1e-12));
    CHECK(max_abs(CMatrix(closed - matrix_exp(CMatrix(
                              -(theta / x.lambda) * k_matrix(x))))) < 1e-11);
  }
}

TEST_CASE("conformal factor of the embedded sphere") {
  CHECK(conformal_factor_value(2, 2) == doctest::Approx(1.0));
  CHECK(conformal_factor_value(1, 3) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  CHECK(conformal_factor(random_umn(2, 2, 1.3, 49)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conformal_factor(random_umn(3, 1, 0.7, 50)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}
