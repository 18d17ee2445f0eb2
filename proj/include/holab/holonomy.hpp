#pragma once

#include <functional>

#include "holab/lie.hpp"
#include "holab/loop.hpp"
#include "holab/su2.hpp"

namespace holab {

// A closed piecewise-smooth path of unitaries in U(n+m). Each piece carries
// its own local parameter s in [0, 1]; pieces occupy equal spans of the
// global parameter. `value` evaluates the path point, `mc` the
// Maurer-Cartan derivative w(s)^{-1} dw/ds in the local parameter (this is
// what the transport integrator consumes, so no global rescaling is
// needed). Piece formulas extend smoothly slightly past [0, 1], which lets
// finite-difference stencils sit at piece boundaries.
class LiftedPath {
 public:
  struct Piece {
    std::function<CMatrix(double)> value;
    std::function<CMatrix(double)> mc;
  };

  LiftedPath(std::vector<Piece> pieces, Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  std::size_t piece_count() const { return pieces_.size(); }
  const Piece& piece(std::size_t i) const { return pieces_.at(i); }

  // Evaluation at global t in [0, 1].
  CMatrix value(double t) const;

  CMatrix start() const { return pieces_.front().value(0.0); }
  CMatrix end() const { return pieces_.back().value(1.0); }
  bool closed(double tol = 1e-9) const;

 private:
  std::vector<Piece> pieces_;
  Eigen::Index dim_;
};

// Horizontal-lift boundary path of an XY loop on the Hopf-type surface of
// X: each point maps through w = f_group(t_point(x, y), X), with the
// Maurer-Cartan derivative taken analytically through the embedding.
//
// Orientation convention: a Rect denotes a region, and its boundary is
// traversed CLOCKWISE in the chart here -- the orientation for which the
// measured holonomy phase equals +2 * area_model_B (the chart's
// counterclockwise orientation carries the opposite phase). Sampled loops
// are traversed exactly as given.
LiftedPath lift_path_hopf(const Loop& loop, const UmnElement& x);

// Coefficient-path lift for a flat pair: w(s) = exp(u(s) X-hat + v(s) Y-hat)
// along a closed UV polyline, derivative by 4th-order central differences
// (step 1e-5 in the local parameter).
LiftedPath lift_path_flat(const Loop& loop, const FlatPair& surface);

struct TransportResult {
  CMatrix v;              // transported block at t = 1
  double drift = 0.0;     // unitarity defect of v BEFORE any correction
  bool corrected = false; // polar correction applied (drift > 1e-10)
};

// Path-ordered transport of the fiber adjustment: solves a'(s) = -B(s) a(s),
// a(0) = I, where B is the dim x dim diagonal block of the Maurer-Cartan
// derivative starting at `offset`, by classical RK4 with steps allocated
// per smooth piece. The holonomy displacement of the loop is a(1).
TransportResult holonomy_transport_block(const LiftedPath& path,
                                         Eigen::Index offset, Eigen::Index dim,
                                         int steps, double closure_tol = 1e-9);

// The U(n) holonomy: upper-left n x n block.
TransportResult holonomy_transport(const LiftedPath& path, Eigen::Index n,
                                   int steps, double closure_tol = 1e-9);

struct HolonomyReport {
  CMatrix v_measured;        // transported holonomy element (n x n)
  CMatrix v_predicted;       // closed-form prediction (n x n)
  double theta_predicted = 0.0;
  double area_model_b = 0.0;   // signed chart area (rect: region area)
  double area_surface_s = 0.0; // (2n/(n+m)) * area_model_b
  double deviation = 0.0;      // max-norm |v_measured - v_predicted|
  int steps = 0;
  bool flat = false;
  double drift = 0.0;          // integrator unitarity defect (pre-correction)
};

// Closed-form prediction only (v_measured left empty, deviation 0):
// flat surfaces give V = I_n, theta = 0; Hopf surfaces give V = e^{i theta}
// I_n with theta = 2 ((n+m)/(2n)) area_surface_S. For a Rect the areas are
// the (positive) region areas, matching the clockwise lift traversal; for
// sampled loops the areas are signed as traversed and theta flips sign
// (counterclockwise chart traversal carries phase e^{-2i area}).
HolonomyReport holonomy_analytic(const GeodesicSurface& surface,
                                 const Loop& loop);

// Full run: analytic prediction + transport measurement + deviation.
HolonomyReport run_holonomy(const GeodesicSurface& surface, const Loop& loop,
                            int steps);

// The U(m)-side holonomy element I_m + ((e^{-i theta} - 1)/lambda) X X^*
// (the lower-right block of fiber_exp(theta, X)).
CMatrix holonomy_um(double theta, const UmnElement& x);

// Independent first-fundamental-form area of the embedded surface patch
// over the rectangle: E, F, G are inner products of the horizontal
// (m-block) Maurer-Cartan derivatives of (x, y) -> f_group(t_point(x, y)),
// computed by 4th-order finite differences, integrated by composite
// Simpson on a mesh x mesh grid (mesh even, >= 8). Converges to
// (2n/(n+m)) * area_model_B without using the conformal-factor shortcut.
double area_numeric(const HopfDisk& surface, const Rect& rect, int mesh);

// Reverses the traversal of a sampled loop (DomainError on Rect, whose
// traversal is a consumer convention, not data).
Loop reverse_loop(const Loop& loop);

// The rectangle boundary as an explicit sampled loop in the given
// traversal direction (counterclockwise = the quadrature convention).
Loop rect_as_sampled(const Rect& r, bool counterclockwise);

}  // namespace holab
