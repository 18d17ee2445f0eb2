#include "holab/holonomy.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <memory>

namespace holab {

LiftedPath::LiftedPath(std::vector<Piece> pieces, Eigen::Index dim)
    : pieces_(std::move(pieces)), dim_(dim) {
  if (pieces_.empty()) throw DomainError("LiftedPath: no pieces");
  if (dim_ < 1) throw DimensionError("LiftedPath: dimension must be positive");
}

CMatrix LiftedPath::value(double t) const {
  if (t < 0.0 || t > 1.0)
    throw DomainError("LiftedPath::value: t outside [0, 1]");
  const double scaled = t * static_cast<double>(pieces_.size());
  std::size_t idx = static_cast<std::size_t>(scaled);
  if (idx >= pieces_.size()) idx = pieces_.size() - 1;  // t == 1
  return pieces_[idx].value(scaled - static_cast<double>(idx));
}

bool LiftedPath::closed(double tol) const {
  return max_abs(CMatrix(start() - end())) <= tol;
}

namespace {

// Immutable per-surface data shared by all pieces of a Hopf lift.
struct HopfLiftData {
  UmnElement x;
  CMatrix xh_n;   // hat(X)/sqrt(lambda)     (image of E1)
  CMatrix ixh_n;  // hat(iX)/sqrt(lambda)    (image of E2)
  CMatrix k_n;    // K/lambda                (image of E3)
};

// Maurer-Cartan coefficients of s -> t(x0 + s dx, y0 + s dy) in the
// E1, E2, E3 basis: t^{-1} dt/dx = cos y E1 + sin y E2 and
// t^{-1} dt/dy = sin x cos x (-sin y E1 + cos y E2) - sin^2 x E3.
std::array<double, 3> t_segment_mc(double x, double y, double dx, double dy) {
  const double sc = std::sin(x) * std::cos(x);
  const double s2 = std::sin(x) * std::sin(x);
  return {dx * std::cos(y) - dy * sc * std::sin(y),
          dx * std::sin(y) + dy * sc * std::cos(y), -dy * s2};
}

LiftedPath::Piece hopf_piece(const std::shared_ptr<const HopfLiftData>& data,
                             const ModelPoint& from, const ModelPoint& to) {
  const double x0 = from.x, y0 = from.y;
  const double dx = to.x - from.x, dy = to.y - from.y;
  LiftedPath::Piece piece;
  piece.value = [data, x0, y0, dx, dy](double s) {
    return f_group(t_point(x0 + s * dx, y0 + s * dy), data->x);
  };
  piece.mc = [data, x0, y0, dx, dy](double s) {
    const std::array<double, 3> c =
        t_segment_mc(x0 + s * dx, y0 + s * dy, dx, dy);
    return CMatrix(c[0] * data->xh_n + c[1] * data->ixh_n + c[2] * data->k_n);
  };
  return piece;
}

}  // namespace

LiftedPath lift_path_hopf(const Loop& loop, const UmnElement& x) {
  validate_loop(loop);
  std::vector<ModelPoint> polyline;
  if (std::holds_alternative<Rect>(loop)) {
    // Region boundary traversed clockwise in the chart: the orientation for
    // which the holonomy phase is +2 * area (counterclockwise traversal
    // measures the conjugate).
    polyline = rect_boundary_ccw(std::get<Rect>(loop));
    std::reverse(polyline.begin(), polyline.end());
  } else if (std::holds_alternative<SampledXY>(loop)) {
    polyline = std::get<SampledXY>(loop).points;
  } else {
    throw DomainError("lift_path_hopf: loop must be in chart (x, y) form");
  }

  const Complex i(0.0, 1.0);
  const double rl = std::sqrt(x.lambda);
  auto data = std::make_shared<const HopfLiftData>(HopfLiftData{
      x, CMatrix(hat(x.x) / rl), CMatrix(hat(CMatrix(i * x.x)) / rl),
      CMatrix(k_matrix(x) / x.lambda)});

  std::vector<LiftedPath::Piece> pieces;
  pieces.reserve(polyline.size() - 1);
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k)
    pieces.push_back(hopf_piece(data, polyline[k], polyline[k + 1]));
  return LiftedPath(std::move(pieces), x.n() + x.m());
}

LiftedPath lift_path_flat(const Loop& loop, const FlatPair& surface) {
  validate_loop(loop);
  if (!std::holds_alternative<SampledUV>(loop))
    throw DomainError("lift_path_flat: loop must be in coefficient (u, v) form");
  const auto& points = std::get<SampledUV>(loop).points;

  auto xh = std::make_shared<const CMatrix>(hat(surface.x.x));
  auto yh = std::make_shared<const CMatrix>(hat(surface.y.x));

  std::vector<LiftedPath::Piece> pieces;
  pieces.reserve(points.size() - 1);
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double u0 = points[k][0], v0 = points[k][1];
    const double du = points[k + 1][0] - u0, dv = points[k + 1][1] - v0;
    LiftedPath::Piece piece;
    auto value = [xh, yh, u0, v0, du, dv](double s) {
      return matrix_exp(CMatrix((u0 + s * du) * (*xh) + (v0 + s * dv) * (*yh)));
    };
    piece.value = value;
    piece.mc = [value](double s) {
      // High-accuracy directional derivative of the exponential: 4th-order
      // central differences; the segment formula is entire in s, so the
      // stencil may extend past [0, 1].
      const double h = 1e-5;
      CMatrix vel = (-value(s + 2 * h) + 8.0 * value(s + h) -
                     8.0 * value(s - h) + value(s - 2 * h)) /
                    (12.0 * h);
      CMatrix m = value(s).adjoint() * vel;
      return CMatrix(0.5 * (m - m.adjoint()));  // clean the skew part
    };
    pieces.push_back(std::move(piece));
  }
  return LiftedPath(std::move(pieces),
                    surface.x.n() + surface.x.m());
}

TransportResult holonomy_transport_block(const LiftedPath& path,
                                         Eigen::Index offset, Eigen::Index dim,
                                         int steps, double closure_tol) {
  if (steps < 16)
    throw DomainError("holonomy_transport: need at least 16 steps");
  if (offset < 0 || dim < 1 || offset + dim > path.dim())
    throw DimensionError("holonomy_transport: block outside path dimension");
  if (!path.closed(closure_tol))
    throw NonClosedLoopError("holonomy_transport: path does not close up");

  const std::size_t piece_count = path.piece_count();
  const int base = steps / static_cast<int>(piece_count);
  const int rem = steps % static_cast<int>(piece_count);

  auto block = [&](const CMatrix& m) {
    return CMatrix(m.block(offset, offset, dim, dim));
  };

  CMatrix a = CMatrix::Identity(dim, dim);
  for (std::size_t p = 0; p < piece_count; ++p) {
    const auto& mc = path.piece(p).mc;
    // Every piece gets at least one step so corners never sit inside a step.
    const int n_steps = std::max(1, base + (static_cast<int>(p) < rem ? 1 : 0));
    const double h = 1.0 / n_steps;
    CMatrix b0 = block(mc(0.0));
    for (int j = 0; j < n_steps; ++j) {
      const double s = j * h;
      const CMatrix bm = block(mc(s + 0.5 * h));
      const CMatrix b1 = block(mc(s + h));
      const CMatrix k1 = -b0 * a;
      const CMatrix k2 = -bm * (a + (0.5 * h) * k1);
      const CMatrix k3 = -bm * (a + (0.5 * h) * k2);
      const CMatrix k4 = -b1 * (a + h * k3);
      a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      b0 = b1;
    }
  }

  TransportResult result;
  result.drift =
      max_abs(CMatrix(a.adjoint() * a - CMatrix::Identity(dim, dim)));
  if (result.drift > 1e-10) {
    // Polar correction by the Newton iteration a <- (a + a^{-*})/2.
    result.corrected = true;
    for (int it = 0; it < 50; ++it) {
      CMatrix inv_adj = a.partialPivLu().inverse().adjoint();
      a = 0.5 * (a + inv_adj);
      if (max_abs(CMatrix(a.adjoint() * a -
                          CMatrix::Identity(dim, dim))) < 1e-14)
        break;
    }
  }
  result.v = a;
  return result;
}

TransportResult holonomy_transport(const LiftedPath& path, Eigen::Index n,
                                   int steps, double closure_tol) {
  return holonomy_transport_block(path, 0, n, steps, closure_tol);
}

namespace {

const UmnElement& surface_x(const GeodesicSurface& surface) {
  if (std::holds_alternative<HopfDisk>(surface))
    return std::get<HopfDisk>(surface).x;
  return std::get<FlatPair>(surface).x;
}

}  // namespace

HolonomyReport holonomy_analytic(const GeodesicSurface& surface,
                                 const Loop& loop) {
  validate_loop(loop);
  const UmnElement& x = surface_x(surface);
  const Eigen::Index n = x.n();
  const Eigen::Index m = x.m();

  HolonomyReport report;
  if (std::holds_alternative<FlatPair>(surface)) {
    if (!std::holds_alternative<SampledUV>(loop))
      throw DomainError(
          "holonomy_analytic: flat surfaces take coefficient (u, v) loops");
    report.flat = true;
    report.v_predicted = CMatrix::Identity(n, n);
    return report;
  }

  if (!loop_is_xy(loop))
    throw DomainError(
        "holonomy_analytic: Hopf surfaces take chart (x, y) loops");
  report.flat = false;
  report.area_model_b = area_model_B(loop);
  report.area_surface_s = area_surface_S(loop, n, m);
  double theta = 2.0 * (static_cast<double>(n + m) /
                        (2.0 * static_cast<double>(n))) *
                 report.area_surface_s;
  // Rectangles are regions: the lift traverses their boundary in the
  // orientation realizing the positive phase. Sampled loops are traversed
  // as given, and the chart's counterclockwise orientation (positive
  // signed area) carries phase e^{-2i area}.
  if (!std::holds_alternative<Rect>(loop)) theta = -theta;
  report.theta_predicted = theta;
  report.v_predicted =
      std::exp(Complex(0.0, theta)) * CMatrix::Identity(n, n);
  return report;
}

HolonomyReport run_holonomy(const GeodesicSurface& surface, const Loop& loop,
                            int steps) {
  HolonomyReport report = holonomy_analytic(surface, loop);
  const UmnElement& x = surface_x(surface);

  LiftedPath path =
      report.flat
          ? lift_path_flat(loop, std::get<FlatPair>(surface))
          : lift_path_hopf(loop, x);
  TransportResult transported = holonomy_transport(path, x.n(), steps);

  report.v_measured = transported.v;
  report.drift = transported.drift;
  report.steps = steps;
  report.deviation = max_abs(CMatrix(report.v_measured - report.v_predicted));
  return report;
}

CMatrix holonomy_um(double theta, const UmnElement& x) {
  const Complex i(0.0, 1.0);
  return CMatrix(CMatrix::Identity(x.m(), x.m()) +
                 ((std::exp(-i * theta) - 1.0) / x.lambda) *
                     (x.x * x.x.adjoint()));
}

double area_numeric(const HopfDisk& surface, const Rect& rect, int mesh) {
  validate_loop(Loop(rect));
  if (mesh < 8 || mesh % 2 != 0)
    throw DomainError(
        "area_numeric: mesh too coarse, need an even mesh count >= 8");
  const UmnElement& x = surface.x;
  const Eigen::Index n = x.n();
  const Eigen::Index m = x.m();
  const BlockShape shape(n, m);

  // f_group(t_point(x, y)) = exp(x cos y E1' + x sin y E2') with E1', E2'
  // the embedded basis; precompute the two matrices once.
  const Complex i(0.0, 1.0);
  const double rl = std::sqrt(x.lambda);
  const CMatrix e1 = hat(x.x) / rl;
  const CMatrix e2 = hat(CMatrix(i * x.x)) / rl;
  auto psi = [&](double xx, double yy) {
    return matrix_exp(
        CMatrix(xx * std::cos(yy) * e1 + xx * std::sin(yy) * e2));
  };
  const double h = 1e-5;
  auto mc_dir = [&](double xx, double yy, bool along_x) {
    auto at = [&](double s) {
      return along_x ? psi(xx + s, yy) : psi(xx, yy + s);
    };
    CMatrix vel =
        (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
    return proj_m(CMatrix(psi(xx, yy).adjoint() * vel), shape);
  };

  // Composite Simpson weights over the (mesh+1)^2 grid.
  auto simpson_weight = [&](int j) {
    if (j == 0 || j == mesh) return 1.0;
    return (j % 2 == 1) ? 4.0 : 2.0;
  };
  const double hx = rect.a / mesh;
  const double hy = rect.b / mesh;
  if (hx == 0.0 || hy == 0.0) return 0.0;

  double sum = 0.0;
  for (int jx = 0; jx <= mesh; ++jx) {
    const double xx = rect.p + jx * hx;
    for (int jy = 0; jy <= mesh; ++jy) {
      const double yy = rect.q + jy * hy;
      const CMatrix mx = mc_dir(xx, yy, true);
      const CMatrix my = mc_dir(xx, yy, false);
      const double e = inner_product(mx, mx);
      const double f = inner_product(mx, my);
      const double g = inner_product(my, my);
      const double gram = std::max(e * g - f * f, 0.0);
      sum += simpson_weight(jx) * simpson_weight(jy) * std::sqrt(gram);
    }
  }
  return sum * (hx / 3.0) * (hy / 3.0);
}

Loop reverse_loop(const Loop& loop) {
  if (std::holds_alternative<SampledXY>(loop)) {
    SampledXY s = std::get<SampledXY>(loop);
    std::reverse(s.points.begin(), s.points.end());
    return s;
  }
  if (std::holds_alternative<SampledUV>(loop)) {
    SampledUV s = std::get<SampledUV>(loop);
    std::reverse(s.points.begin(), s.points.end());
    return s;
  }
  throw DomainError(
      "reverse_loop: a Rect is a region; sample its boundary to orient it");
}

Loop rect_as_sampled(const Rect& r, bool counterclockwise) {
  std::vector<ModelPoint> pts = rect_boundary_ccw(r);
  if (!counterclockwise) std::reverse(pts.begin(), pts.end());
  return SampledXY{std::move(pts)};
}

}  // namespace holab
