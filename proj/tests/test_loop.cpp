#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holab/holonomy.hpp"
#include "holab/loop.hpp"
#include "holab/rng.hpp"

using namespace holab;

namespace {

constexpr double kPi = 3.141592653589793;

SampledXY circle_loop(double cx, double cy, double r, int segments) {
  SampledXY loop;
  for (int k = 0; k <= segments; ++k) {
    const double t = 2.0 * kPi * k / segments;
    loop.points.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
  }
  loop.points.back() = loop.points.front();
  return loop;
}

// Plain 2D Simpson integration of the chart area form (1/2) sin 2x over the
// rectangle; an oracle independent of the Green's-theorem line quadrature.
double simpson_region_area(const Rect& r, int mesh) {
  double total = 0.0;
  const double hx = r.a / mesh, hy = r.b / mesh;
  for (int i = 0; i <= mesh; ++i) {
    const double wx = (i == 0 || i == mesh) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    for (int j = 0; j <= mesh; ++j) {
      const double wy = (j == 0 || j == mesh) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      total += wx * wy * 0.5 * std::sin(2.0 * (r.p + i * hx));
    }
  }
  return total * hx * hy / 9.0;
}

}  // namespace

TEST_CASE("rectangle validation") {
  CHECK_NOTHROW(validate_loop(Rect{0.1, 0.5, 2.0, 1.0}));
  CHECK_NOTHROW(validate_loop(Rect{0, 0, 0, 0}));  // degenerate: zero area
  CHECK_NOTHROW(validate_loop(Rect{0.0, kPi / 2, 0.0, 2 * kPi}));
  CHECK_THROWS_AS(validate_loop(Rect{-0.1, 0.5, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate_loop(Rect{1.0, 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate_loop(Rect{0.1, -0.2, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate_loop(Rect{0.1, 0.2, -1.0, 1.0}), DomainError);
}

TEST_CASE("sampled loop validation") {
  SampledXY tri;
  tri.points = {{0.2, 0.0}, {0.8, 0.5}, {0.4, 1.0}, {0.2, 0.0}};
  CHECK_NOTHROW(validate_loop(tri));

  SampledXY open = tri;
  open.points.back() = {0.2, 1e-6};
  CHECK_THROWS_AS(validate_loop(open), NonClosedLoopError);

  SampledXY few;
  few.points = {{0.2, 0.0}, {0.8, 0.5}, {0.2, 0.0}};
  CHECK_THROWS_AS(validate_loop(few), DomainError);

  SampledXY outside = tri;
  outside.points[1].x = 1.7;  // past the chart edge
  CHECK_THROWS_AS(validate_loop(outside), DomainError);

  SampledUV uv;
  uv.points = {{-3.0, 0.0}, {5.0, 0.5}, {0.4, -2.0}, {-3.0, 0.0}};
  CHECK_NOTHROW(validate_loop(uv));  // coefficients are unconstrained
}

TEST_CASE("chart sphere areas of rectangles") {
  CHECK(area_rect_cp1(Rect{0.0, kPi / 2, 0.0, 2 * kPi}) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(area_rect_cp1(Rect{0.0, kPi / 4, 0.0, 1.0}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(area_rect_cp1(Rect{0.3, 0.0, 0.0, 1.0}) == 0.0);

  // Model hemisphere area is a quarter of the doubled-chart area.
  const Rect r{0.25, 0.75, 1.0, 2.0};
  CHECK(area_model_B(Loop(r)) ==
        doctest::Approx(0.25 * area_rect_cp1(r)).epsilon(1e-14));
  CHECK(area_model_B(Loop(Rect{0.0, kPi / 2, 0.0, 2 * kPi})) ==
        doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("line quadrature matches region integration") {
  Rng rng(61);
  for (int t = 0; t < 12; ++t) {
    Rect r;
    r.p = rng.uniform(0.0, 1.0);
    r.a = rng.uniform(0.01, 1.5707963267948966 - r.p);
    r.q = rng.uniform(0.0, 4.0);
    r.b = rng.uniform(0.05, 3.0);
    // Green's-theorem boundary quadrature of the sampled ccw boundary
    // against the closed-form region area.
    const double via_boundary = area_model_B(rect_as_sampled(r, true));
    CHECK(via_boundary == doctest::Approx(area_model_B(Loop(r))).epsilon(1e-12));
    CHECK(area_model_B(Loop(r)) ==
          doctest::Approx(simpson_region_area(r, 200)).epsilon(1e-8));
    // Clockwise traversal flips the sign.
    CHECK(area_model_B(rect_as_sampled(r, false)) ==
          doctest::Approx(-via_boundary).epsilon(1e-12));
  }
}

TEST_CASE("vertical displacement integral") {
  Rng rng(62);
  for (int t = 0; t < 12; ++t) {
    Rect r;
    r.p = rng.uniform(0.0, 1.2);
    r.a = rng.uniform(0.01, 1.5707963267948966 - r.p);
    r.q = rng.uniform(0.0, 4.0);
    r.b = rng.uniform(0.05, 5.0);
    const double closed =
        r.b * (std::pow(std::sin(r.p + r.a), 2) - std::pow(std::sin(r.p), 2));
    CHECK(z_holonomy(Loop(r)) == doctest::Approx(closed).epsilon(1e-12));
  }

  // No fiber-phase motion, no displacement.
  SampledXY flat_y;
  flat_y.points = {{0.2, 1.0}, {0.9, 1.0}, {0.5, 1.0}, {0.2, 1.0}};
  CHECK(z_holonomy(Loop(flat_y)) == doctest::Approx(0.0).epsilon(1e-15));

  // Displacement doubles the enclosed area on arbitrary sampled loops.
  const SampledXY circle = circle_loop(0.8, 1.0, 0.3, 64);
  CHECK(z_holonomy(Loop(circle)) ==
        doctest::Approx(2.0 * area_model_B(Loop(circle))).epsilon(1e-13));
}

TEST_CASE("embedded surface area by first fundamental form") {
  // n = m = 1: the embedded sphere is the model hemisphere itself.
  const UmnElement one = validate_umn([] {
    CMatrix c(1, 1);
    c << 1;
    return c;
  }());
  const Rect full{0.0, kPi / 2, 0.0, 2 * kPi};
  CHECK(area_numeric(HopfDisk{one}, full, 64) ==
        doctest::Approx(kPi).epsilon(1e-3));

  // Larger fibers scale areas by the squared conformal factor.
  const UmnElement x12 = random_umn(2, 1, 1.0, 63);
  const Rect r{0.2, 0.9, 0.5, 1.1};
  const double ratio =
      area_numeric(HopfDisk{x12}, r, 64) / area_model_B(Loop(r));
  CHECK(ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  CHECK(area_numeric(HopfDisk{one}, Rect{0.3, 0.0, 0.5, 1.0}, 64) == 0.0);
  CHECK_THROWS_AS(area_numeric(HopfDisk{one}, r, 6), DomainError);
  CHECK_THROWS_AS(area_numeric(HopfDisk{one}, r, 15), DomainError);
}

TEST_CASE("loop reversal") {
  const SampledXY circle = circle_loop(0.7, 2.0, 0.25, 32);
  const Loop reversed = reverse_loop(Loop(circle));
  CHECK(area_model_B(reversed) ==
        doctest::Approx(-area_model_B(Loop(circle))).epsilon(1e-14));
  CHECK_THROWS_AS(reverse_loop(Loop(Rect{0.1, 0.2, 0.3, 0.4})), DomainError);
}
