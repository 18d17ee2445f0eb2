#include "holab/loop.hpp"

#include <cmath>

namespace holab {

namespace {

constexpr double kClosureTol = 1e-12;
constexpr double kHalfPi = 1.5707963267948966;

void validate_rect(const Rect& r) {
  if (!(r.p >= 0.0) || !(r.a >= 0.0) || r.p + r.a > kHalfPi + 1e-12)
    throw DomainError("Rect: need 0 <= p <= p+a <= pi/2");
  if (!(r.q >= 0.0) || !(r.b >= 0.0))
    throw DomainError("Rect: need q >= 0 and b >= 0");
}

void validate_xy(const SampledXY& s) {
  if (s.points.size() < 4)
    throw DomainError("SampledXY: need at least 4 points");
  const ModelPoint& f = s.points.front();
  const ModelPoint& l = s.points.back();
  if (std::abs(f.x - l.x) > kClosureTol || std::abs(f.y - l.y) > kClosureTol)
    throw NonClosedLoopError("SampledXY: first point must equal last");
  for (const ModelPoint& p : s.points)
    if (p.x < -1e-12 || p.x > kHalfPi + 1e-12)
      throw DomainError("SampledXY: x coordinates must lie in [0, pi/2]");
}

void validate_uv(const SampledUV& s) {
  if (s.points.size() < 4)
    throw DomainError("SampledUV: need at least 4 points");
  const auto& f = s.points.front();
  const auto& l = s.points.back();
  if (std::abs(f[0] - l[0]) > kClosureTol || std::abs(f[1] - l[1]) > kClosureTol)
    throw NonClosedLoopError("SampledUV: first point must equal last");
}

double half_sin_sq(double x, double /*y*/) {
  const double s = std::sin(x);
  return 0.5 * s * s;
}

double sin_sq(double x, double /*y*/) {
  const double s = std::sin(x);
  return s * s;
}

}  // namespace

void validate_loop(const Loop& loop) {
  std::visit([](const auto& l) {
    using T = std::decay_t<decltype(l)>;
    if constexpr (std::is_same_v<T, Rect>) validate_rect(l);
    else if constexpr (std::is_same_v<T, SampledXY>) validate_xy(l);
    else validate_uv(l);
  }, loop);
}

bool loop_is_xy(const Loop& loop) {
  return !std::holds_alternative<SampledUV>(loop);
}

std::vector<ModelPoint> rect_boundary_ccw(const Rect& r) {
  return {{r.p, r.q},       {r.p + r.a, r.q}, {r.p + r.a, r.q + r.b},
          {r.p, r.q + r.b}, {r.p, r.q}};
}

std::vector<ModelPoint> loop_polyline_xy(const Loop& loop) {
  validate_loop(loop);
  if (std::holds_alternative<Rect>(loop))
    return rect_boundary_ccw(std::get<Rect>(loop));
  if (std::holds_alternative<SampledXY>(loop))
    return std::get<SampledXY>(loop).points;
  throw DomainError("loop_polyline_xy: loop is not in chart (x, y) form");
}

double line_quadrature_dy(const std::vector<ModelPoint>& polyline,
                          double (*integrand)(double x, double y)) {
  // 5-point Gauss-Legendre nodes/weights on [-1, 1].
  static const double node[5] = {-0.9061798459386640, -0.5384693101056831,
                                 0.0, 0.5384693101056831, 0.9061798459386640};
  static const double weight[5] = {0.2369268850561891, 0.4786286704993665,
                                   0.5688888888888889, 0.4786286704993665,
                                   0.2369268850561891};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const ModelPoint& p0 = polyline[i];
    const ModelPoint& p1 = polyline[i + 1];
    const double dx = p1.x - p0.x;
    const double dy = p1.y - p0.y;
    if (dy == 0.0) continue;
    // Subdivide so each panel is short; the composite 10th-order rule then
    // resolves sin^2 far below 1e-12.
    const int panels =
        std::max(1, static_cast<int>(std::ceil((std::abs(dx) + std::abs(dy)) / 0.1)));
    double seg = 0.0;
    for (int c = 0; c < panels; ++c) {
      const double sa = static_cast<double>(c) / panels;
      const double sb = static_cast<double>(c + 1) / panels;
      const double mid = 0.5 * (sa + sb);
      const double half = 0.5 * (sb - sa);
      for (int g = 0; g < 5; ++g) {
        const double s = mid + half * node[g];
        seg += weight[g] * half * integrand(p0.x + s * dx, p0.y + s * dy);
      }
    }
    total += seg * dy;
  }
  return total;
}

double area_rect_cp1(const Rect& r) {
  validate_rect(r);
  const double s1 = std::sin(r.p + r.a);
  const double s0 = std::sin(r.p);
  return 2.0 * r.b * (s1 * s1 - s0 * s0);
}

double area_model_B(const Loop& loop) {
  validate_loop(loop);
  if (std::holds_alternative<Rect>(loop))
    return 0.25 * area_rect_cp1(std::get<Rect>(loop));
  if (std::holds_alternative<SampledXY>(loop))
    return line_quadrature_dy(std::get<SampledXY>(loop).points, half_sin_sq);
  throw DomainError("area_model_B: loop is not in chart (x, y) form");
}

double area_surface_S(const Loop& loop, Eigen::Index n, Eigen::Index m) {
  if (n < 1 || m < 1) throw DimensionError("area_surface_S: need n, m >= 1");
  return (2.0 * static_cast<double>(n) / static_cast<double>(n + m)) *
         area_model_B(loop);
}

double z_holonomy(const Loop& loop) {
  return line_quadrature_dy(loop_polyline_xy(loop), sin_sq);
}

}  // namespace holab
