#pragma once

#include <array>
#include <variant>
#include <vector>

#include "holab/matrix.hpp"

namespace holab {

// A point of the model chart: x in [0, pi/2] is the polar coordinate of the
// half-turn parametrization, y the fiber-phase coordinate (periodic; values
// outside [0, 2pi) are accepted and wrap).
struct ModelPoint {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned chart rectangle [p, p+a] x [q, q+b]. A Rect denotes the
// *region*; traversal orientation is chosen by each consumer (quadratures
// use the counterclockwise boundary, holonomy lifts the clockwise one --
// see lift_path_hopf). Degenerate rectangles (a = 0 or b = 0) are allowed
// and enclose zero area.
struct Rect {
  double p = 0.0;
  double a = 0.0;
  double q = 0.0;
  double b = 0.0;
};

// Closed sampled polyline in chart coordinates, traversed exactly as given.
// First point must equal the last to 1e-12; at least 4 points.
struct SampledXY {
  std::vector<ModelPoint> points;
};

// Closed sampled polyline of plane coefficients (u, v) for flat surfaces
// w = exp(u X-hat + v Y-hat). Same closure rules.
struct SampledUV {
  std::vector<std::array<double, 2>> points;
};

using Loop = std::variant<Rect, SampledXY, SampledUV>;

// Structural validation: rectangle range bounds, sampled closure/count.
// Throws DomainError / NonClosedLoopError.
void validate_loop(const Loop& loop);

// True for Rect and SampledXY (chart-coordinate loops).
bool loop_is_xy(const Loop& loop);

// Counterclockwise boundary polyline of a rectangle, starting at (p, q):
// (p,q) -> (p+a,q) -> (p+a,q+b) -> (p,q+b) -> (p,q).
std::vector<ModelPoint> rect_boundary_ccw(const Rect& r);

// Chart polyline of an XY loop as the quadratures traverse it: rectangles
// counterclockwise, sampled loops as given. Throws on UV loops.
std::vector<ModelPoint> loop_polyline_xy(const Loop& loop);

// Area of the rectangle in the sphere chart of the projective line:
// 2b(sin^2(p+a) - sin^2 p), the integral of the chart area form
// 2 sin 2x dx dy over the region.
double area_rect_cp1(const Rect& r);

// Signed area of an XY loop on the model hemisphere B (whose chart area
// form is (1/4) of the one above). Rectangles use the closed form on the
// region (positive); sampled loops use the Green's-theorem line integral
// (1/2) \oint sin^2 x dy, positive for counterclockwise traversal.
double area_model_B(const Loop& loop);

// The same area scaled to the embedded surface S: (2n/(n+m)) * area_model_B.
double area_surface_S(const Loop& loop, Eigen::Index n, Eigen::Index m);

// The vertical displacement integral of the model fibration:
// \int_0^1 sin^2 x(t) y'(t) dt over the loop (rectangles traversed
// counterclockwise), by composite Gauss-Legendre quadrature. Equals
// b(sin^2(p+a) - sin^2 p) on rectangles and 2 * area_model_B in general.
double z_holonomy(const Loop& loop);

// Composite line quadrature of f(x, y) * y'(t) dt along a closed polyline;
// shared kernel of z_holonomy and the Green's-theorem areas.
double line_quadrature_dy(const std::vector<ModelPoint>& polyline,
                          double (*integrand)(double x, double y));

}  // namespace holab
