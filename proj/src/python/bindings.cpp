#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "holab/holonomy.hpp"
#include "holab/rng.hpp"
#include "holab/verify.hpp"

namespace py = pybind11;
using namespace holab;

namespace {

SampledXY make_sampled_xy(const std::vector<std::array<double, 2>>& pts) {
  SampledXY s;
  s.points.reserve(pts.size());
  for (const auto& p : pts) s.points.push_back({p[0], p[1]});
  return s;
}

std::vector<std::array<double, 2>> xy_points(const SampledXY& s) {
  std::vector<std::array<double, 2>> out;
  out.reserve(s.points.size());
  for (const auto& p : s.points) out.push_back({p.x, p.y});
  return out;
}

}  // namespace

PYBIND11_MODULE(_holonomylab, m) {
  m.doc() =
      "Holonomy displacement on unitary frame bundles over Grassmannians: "
      "frames, geodesic surfaces, loop transport and verification suites.";

  // Exception hierarchy (leaf classes registered last so their translators
  // run first).
  auto err = py::register_exception<Error>(m, "Error");
  auto dim = py::register_exception<DimensionError>(m, "DimensionError",
                                                    err.ptr());
  auto dom = py::register_exception<DomainError>(m, "DomainError", err.ptr());
  py::register_exception<ParseError>(m, "ParseError", err.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", err.ptr());
  py::register_exception<NotUmnError>(m, "NotUmnError", dom.ptr());
  py::register_exception<TrivialError>(m, "TrivialError", dom.ptr());
  py::register_exception<NotScalarError>(m, "NotScalarError", dom.ptr());
  py::register_exception<DimensionObstructionError>(
      m, "DimensionObstructionError", dom.ptr());
  py::register_exception<DependentBasisError>(m, "DependentBasisError",
                                              dom.ptr());
  py::register_exception<NonClosedLoopError>(m, "NonClosedLoopError",
                                             dom.ptr());

  // ---- matrices and metric --------------------------------------------
  m.def("max_abs", &max_abs, py::arg("a"), "Entrywise max-abs norm.");
  m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"),
        "Normalized trace metric (1/k) Re Tr(a^* b) on u(k).");
  m.def("inner_product_real", &inner_product_real, py::arg("c"), py::arg("d"),
        "Metric (1/2k) Tr(c^T d) on the real embedding.");
  m.def("real_embedding", &real_embedding, py::arg("a"),
        "Entrywise embedding of complex matrices into 2k x 2k real ones.");
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def(
      "proj_h",
      [](const CMatrix& a, Eigen::Index n, Eigen::Index mm) {
        return proj_h(a, BlockShape(n, mm));
      },
      py::arg("a"), py::arg("n"), py::arg("m"),
      "Projection onto the block-diagonal factor of u(n+m).");
  m.def(
      "proj_m",
      [](const CMatrix& a, Eigen::Index n, Eigen::Index mm) {
        return proj_m(a, BlockShape(n, mm));
      },
      py::arg("a"), py::arg("n"), py::arg("m"),
      "Projection onto the off-diagonal factor of u(n+m).");
  m.def("matrix_exp", &matrix_exp, py::arg("a"),
        "Matrix exponential (scaling and squaring).");
  m.def("matrix_exp_series", &matrix_exp_series, py::arg("a"),
        "Slow independent Taylor-series exponential (cross-check oracle).");

  py::class_<Rng>(m, "Rng",
                  "Deterministic platform-independent random stream.")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next_u64", &Rng::next_u64)
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("uniform", py::overload_cast<double, double>(&Rng::uniform),
           py::arg("lo"), py::arg("hi"))
      .def("gaussian", &Rng::gaussian)
      .def("cgaussian_matrix", &Rng::cgaussian_matrix, py::arg("rows"),
           py::arg("cols"))
      .def("fork", &Rng::fork, py::arg("tag"));

  // ---- frames and surfaces --------------------------------------------
  py::class_<UmnElement>(m, "UmnElement",
                         "Frame X with X^* X = lambda I_n, lambda > 0.")
      .def_readonly("x", &UmnElement::x)
      .def_readonly("lambda_", &UmnElement::lambda)
      .def_property_readonly("m", &UmnElement::m)
      .def_property_readonly("n", &UmnElement::n)
      .def("__repr__", [](const UmnElement& u) {
        return "UmnElement(m=" + std::to_string(u.m()) +
               ", n=" + std::to_string(u.n()) +
               ", lambda=" + std::to_string(u.lambda) + ")";
      });

  py::class_<FlatPair>(m, "FlatPair",
                       "Surface pair with real pairing scalar (flat plane).")
      .def_readonly("x", &FlatPair::x)
      .def_readonly("y", &FlatPair::y)
      .def_readonly("mu", &FlatPair::mu)
      .def_readonly("eta", &FlatPair::eta);

  py::class_<HopfDisk>(m, "HopfDisk", "The plane spanned by X and iX.")
      .def(py::init<UmnElement>(), py::arg("x"))
      .def_readonly("x", &HopfDisk::x);

  py::class_<SurfacePair>(m, "SurfacePair",
                          "General pair with complex pairing scalar.")
      .def_readonly("x", &SurfacePair::x)
      .def_readonly("y", &SurfacePair::y)
      .def_readonly("mu", &SurfacePair::mu)
      .def_readonly("eta", &SurfacePair::eta);

  py::class_<ClosureVerdict>(m, "ClosureVerdict")
      .def_readonly("is_geodesic", &ClosureVerdict::is_geodesic)
      .def_readonly("residual", &ClosureVerdict::residual);

  m.def("validate_umn", &validate_umn, py::arg("x"),
        py::arg("tol") = kStructTol);
  m.def("random_umn", &random_umn, py::arg("m"), py::arg("n"),
        py::arg("lambda_"), py::arg("seed"));
  m.def("pair_mu", &pair_mu, py::arg("x"), py::arg("y"),
        py::arg("tol") = kStructTol,
        "The scalar mu with X^* Y = mu I_n.");
  m.def("hat", &hat, py::arg("x"),
        "Off-diagonal embedding [[0, -X^*], [X, 0]].");
  m.def(
      "unhat",
      [](const CMatrix& a, Eigen::Index n, Eigen::Index mm) {
        return unhat(a, BlockShape(n, mm));
      },
      py::arg("a"), py::arg("n"), py::arg("m"));
  m.def("k_matrix", &k_matrix, py::arg("x"),
        "Block-diagonal element with [hat(X), hat(iX)] = 2K.");
  m.def("triple_bracket_direct", &triple_bracket_direct, py::arg("u"),
        py::arg("v"), py::arg("w"));
  m.def("triple_bracket_formula", &triple_bracket_formula, py::arg("x"),
        py::arg("y"));
  m.def("flat_pair_generate", &flat_pair_generate, py::arg("m"), py::arg("n"),
        py::arg("mu"), py::arg("eta"), py::arg("seed"));
  m.def("counterexample_pair", &counterexample_pair, py::arg("m"),
        py::arg("n"), py::arg("mu"), py::arg("eta"), py::arg("seed"));
  m.def("span_closure_check",
        py::overload_cast<const std::vector<CMatrix>&, double>(
            &span_closure_check),
        py::arg("basis"), py::arg("tol") = kStructTol);
  m.def("span_closure_check",
        py::overload_cast<const GeodesicSurface&, double>(&span_closure_check),
        py::arg("surface"), py::arg("tol") = kStructTol);

  // ---- the sphere model -----------------------------------------------
  m.def("su2_e1", &su2_e1);
  m.def("su2_e2", &su2_e2);
  m.def("su2_e3", &su2_e3);

  py::class_<Su2>(m, "Su2", "Unit quaternion / special unitary 2x2 matrix.")
      .def(py::init(&Su2::make), py::arg("w1"), py::arg("w2"), py::arg("w3"),
           py::arg("w4"), py::arg("tol") = 1e-12)
      .def_readonly("w1", &Su2::w1)
      .def_readonly("w2", &Su2::w2)
      .def_readonly("w3", &Su2::w3)
      .def_readonly("w4", &Su2::w4)
      .def_static("from_matrix", &Su2::from_matrix, py::arg("u"),
                  py::arg("tol") = 1e-10)
      .def("matrix", &Su2::matrix)
      .def("__mul__", &Su2::operator*)
      .def("conjugate", &Su2::conjugate)
      .def("log_coeffs", &Su2::log_coeffs)
      .def("norm", &Su2::norm)
      .def("__repr__", [](const Su2& w) {
        return "Su2(" + std::to_string(w.w1) + ", " + std::to_string(w.w2) +
               ", " + std::to_string(w.w3) + ", " + std::to_string(w.w4) + ")";
      });

  py::class_<ConformalRatios>(m, "ConformalRatios")
      .def_readonly("ratio1", &ConformalRatios::ratio1)
      .def_readonly("ratio2", &ConformalRatios::ratio2);

  m.def("i_conjugate", &i_conjugate, py::arg("w"));
  m.def("t_point", &t_point, py::arg("x"), py::arg("y"),
        "Surface point exp(x (cos y E1 + sin y E2)).");
  m.def("hopf_p", &hopf_p, py::arg("w"),
        "Projection w * i_conjugate(w) onto the sphere slice.");
  m.def("conformal_h_check", &conformal_h_check, py::arg("x"), py::arg("y"));
  m.def("f_alg", &f_alg, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("x"), "Algebra monomorphism su(2) -> u(n+m).");
  m.def("f_group", &f_group, py::arg("w"), py::arg("x"),
        "Group monomorphism SU(2) -> U(n+m).");
  m.def("fiber_exp", &fiber_exp, py::arg("theta"), py::arg("x"),
        "Closed form of the fiber one-parameter subgroup image.");
  m.def("conformal_factor", &conformal_factor, py::arg("x"));
  m.def("conformal_factor_value", &conformal_factor_value, py::arg("n"),
        py::arg("m"));

  // ---- loops and areas --------------------------------------------------
  py::class_<Rect>(m, "Rect", "Chart rectangle [p, p+a] x [q, q+b] (region).")
      .def(py::init([](double p, double a, double q, double b) {
             return Rect{p, a, q, b};
           }),
           py::arg("p"), py::arg("a"), py::arg("q"), py::arg("b"))
      .def_readonly("p", &Rect::p)
      .def_readonly("a", &Rect::a)
      .def_readonly("q", &Rect::q)
      .def_readonly("b", &Rect::b);

  py::class_<SampledXY>(m, "SampledXY",
                        "Closed sampled chart loop (first point == last).")
      .def(py::init(&make_sampled_xy), py::arg("points"))
      .def_property_readonly("points", &xy_points);

  py::class_<SampledUV>(m, "SampledUV",
                        "Closed sampled coefficient loop for flat surfaces.")
      .def(py::init([](const std::vector<std::array<double, 2>>& pts) {
             SampledUV s;
             s.points = pts;
             return s;
           }),
           py::arg("points"))
      .def_readonly("points", &SampledUV::points);

  m.def("validate_loop", &validate_loop, py::arg("loop"));
  m.def("area_rect_cp1", &area_rect_cp1, py::arg("rect"),
        "Doubled-chart sphere area 2b (sin^2(p+a) - sin^2 p).");
  m.def("area_model_B", &area_model_B, py::arg("loop"),
        "Signed chart area on the model hemisphere.");
  m.def("area_surface_S", &area_surface_S, py::arg("loop"), py::arg("n"),
        py::arg("m"), "(2n/(n+m)) * area_model_B.");
  m.def("z_holonomy", &z_holonomy, py::arg("loop"),
        "Vertical displacement integral of the model fibration.");
  m.def("rect_as_sampled", &rect_as_sampled, py::arg("rect"),
        py::arg("counterclockwise"));
  m.def("reverse_loop", &reverse_loop, py::arg("loop"));

  // ---- transport ---------------------------------------------------------
  py::class_<LiftedPath>(m, "LiftedPath",
                         "Piecewise-smooth closed path of unitaries.")
      .def("value", &LiftedPath::value, py::arg("t"))
      .def("closed", &LiftedPath::closed, py::arg("tol") = 1e-9)
      .def_property_readonly("piece_count", &LiftedPath::piece_count)
      .def_property_readonly("dim", &LiftedPath::dim);

  py::class_<TransportResult>(m, "TransportResult")
      .def_readonly("v", &TransportResult::v)
      .def_readonly("drift", &TransportResult::drift)
      .def_readonly("corrected", &TransportResult::corrected);

  py::class_<HolonomyReport>(m, "HolonomyReport")
      .def_readonly("v_measured", &HolonomyReport::v_measured)
      .def_readonly("v_predicted", &HolonomyReport::v_predicted)
      .def_readonly("theta_predicted", &HolonomyReport::theta_predicted)
      .def_readonly("area_model_b", &HolonomyReport::area_model_b)
      .def_readonly("area_surface_s", &HolonomyReport::area_surface_s)
      .def_readonly("deviation", &HolonomyReport::deviation)
      .def_readonly("steps", &HolonomyReport::steps)
      .def_readonly("flat", &HolonomyReport::flat)
      .def_readonly("drift", &HolonomyReport::drift)
      .def("__repr__", [](const HolonomyReport& r) {
        return "HolonomyReport(theta=" + std::to_string(r.theta_predicted) +
               ", deviation=" + std::to_string(r.deviation) + ")";
      });

  m.def("lift_path_hopf", &lift_path_hopf, py::arg("loop"), py::arg("x"));
  m.def("lift_path_flat", &lift_path_flat, py::arg("loop"),
        py::arg("surface"));
  m.def("holonomy_transport", &holonomy_transport, py::arg("path"),
        py::arg("n"), py::arg("steps"), py::arg("closure_tol") = 1e-9);
  m.def("holonomy_transport_block", &holonomy_transport_block,
        py::arg("path"), py::arg("offset"), py::arg("dim"), py::arg("steps"),
        py::arg("closure_tol") = 1e-9);
  m.def("holonomy_analytic", &holonomy_analytic, py::arg("surface"),
        py::arg("loop"));
  m.def("run_holonomy", &run_holonomy, py::arg("surface"), py::arg("loop"),
        py::arg("steps"),
        "Analytic prediction plus measured transport for one loop.");
  m.def("holonomy_um", &holonomy_um, py::arg("theta"), py::arg("x"));
  m.def("area_numeric", &area_numeric, py::arg("surface"), py::arg("rect"),
        py::arg("mesh"),
        "First-fundamental-form area over a chart rectangle.");

  // ---- verification -------------------------------------------------------
  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("name", &SuiteResult::name)
      .def_readonly("pass_", &SuiteResult::pass)
      .def_readonly("max_dev", &SuiteResult::max_dev)
      .def_readonly("threshold", &SuiteResult::threshold)
      .def_readonly("detail", &SuiteResult::detail)
      .def("__repr__", [](const SuiteResult& r) {
        return "SuiteResult(" + r.name + ", " +
               (r.pass ? "PASS" : "FAIL") + ")";
      });

  m.def(
      "verify_all",
      [](std::uint64_t seed, int steps, std::optional<double> tol_override,
         int threads) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.steps = steps;
        opt.tol_override = tol_override;
        opt.threads = threads;
        return verify_all(opt);
      },
      py::arg("seed") = 20240915, py::arg("steps") = 512,
      py::arg("tol_override") = py::none(), py::arg("threads") = 1,
      "Run every verification suite and return the per-suite results.");
}
