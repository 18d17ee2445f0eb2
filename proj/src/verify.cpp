#include "holab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "holab/holonomy.hpp"
#include "holab/json_io.hpp"
#include "holab/rng.hpp"

namespace holab {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return std::string(buf);
}

// Runs fn(0..count-1), possibly on `threads` workers. Callers write results
// into preallocated slots indexed by the trial number, so the outcome is
// independent of scheduling. The first exception (if any) is rethrown.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double threshold_for(const VerifyOptions& opt, double nominal) {
  return opt.tol_override.value_or(nominal);
}

struct ShapeNM {
  Eigen::Index n;
  Eigen::Index m;
};

// Seeded rectangle within the chart, with the moderate vertical extent the
// drift bound of the integrator-quality suite assumes.
Rect random_rect(Rng& rng) {
  Rect r;
  r.p = rng.uniform(0.0, 1.2);
  const double amax = std::min(1.2, 1.5707963267948966 - r.p);
  r.a = rng.uniform(0.05, amax);
  r.q = rng.uniform(0.0, kTwoPi);
  r.b = rng.uniform(0.2, 1.5);
  return r;
}

SuiteResult suite_holonomy_area_law(const VerifyOptions& opt) {
  static const ShapeNM shapes[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 5}};
  constexpr int kSurfaces = 20;
  constexpr int kRects = 5;
  const int tasks = static_cast<int>(std::size(shapes)) * kSurfaces;

  Rng base(opt.seed);
  std::vector<double> devs(static_cast<std::size_t>(tasks), 0.0);
  parallel_for(tasks, opt.threads, [&](int task) {
    const ShapeNM s = shapes[task / kSurfaces];
    Rng rng = base.fork(10000 + static_cast<std::uint64_t>(task));
    const double lambda = rng.uniform(0.5, 2.0);
    UmnElement x = random_umn(s.m, s.n, lambda, rng.next_u64());
    double worst = 0.0;
    for (int r = 0; r < kRects; ++r) {
      HolonomyReport rep =
          run_holonomy(HopfDisk{x}, random_rect(rng), opt.steps);
      worst = std::max(worst, rep.deviation);
    }
    devs[static_cast<std::size_t>(task)] = worst;
  });

  SuiteResult res;
  res.name = "holonomy-area-law";
  res.threshold = threshold_for(opt, 1e-6);
  res.max_dev = *std::max_element(devs.begin(), devs.end());
  res.pass = res.max_dev < res.threshold;
  res.detail = fmt("shapes (1,1)(1,2)(2,2)(2,3)(3,5), %d surfaces x %d "
                   "rectangles each, %d transport steps",
                   kSurfaces, kRects, opt.steps);
  return res;
}

SuiteResult suite_flatness(const VerifyOptions& opt) {
  static const ShapeNM shapes[] = {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}};
  constexpr int kPerShape = 10;
  const int tasks = static_cast<int>(std::size(shapes)) * kPerShape;

  Rng base(opt.seed);
  std::vector<double> devs(static_cast<std::size_t>(tasks), 0.0);
  parallel_for(tasks, opt.threads, [&](int task) {
    const ShapeNM s = shapes[task / kPerShape];
    Rng rng = base.fork(20000 + static_cast<std::uint64_t>(task));
    const double mu = rng.uniform(-0.7, 0.7);
    const double eta = mu * mu + rng.uniform(0.3, 1.5);
    FlatPair fp = flat_pair_generate(s.m, s.n, mu, eta, rng.next_u64());

    // A closed polygon of plane coefficients with 3..7 vertices in [-1,1]^2.
    const int verts = 3 + static_cast<int>(rng.next_u64() % 5);
    SampledUV loop;
    for (int v = 0; v < verts; ++v)
      loop.points.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    loop.points.push_back(loop.points.front());

    LiftedPath path = lift_path_flat(loop, fp);
    TransportResult t = holonomy_transport(path, s.n, opt.steps);
    devs[static_cast<std::size_t>(task)] = max_abs(
        CMatrix(t.v - CMatrix::Identity(s.n, s.n)));
  });

  SuiteResult res;
  res.name = "flatness";
  res.threshold = threshold_for(opt, 1e-6);
  res.max_dev = *std::max_element(devs.begin(), devs.end());
  res.pass = res.max_dev < res.threshold;
  res.detail = fmt("%d flat pairs (2n <= m) x closed coefficient polygons, "
                   "%d transport steps", tasks, opt.steps);
  return res;
}

SuiteResult suite_cp1_law(const VerifyOptions& opt) {
  Rng base(opt.seed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = base.fork(30000 + static_cast<std::uint64_t>(trial));
    Rect r;
    r.p = rng.uniform(0.0, 1.3);
    r.a = rng.uniform(0.01, 1.5707963267948966 - r.p);
    r.q = rng.uniform(0.0, 3.0);
    r.b = rng.uniform(0.1, kTwoPi);
    const double closed_form =
        r.b * (std::pow(std::sin(r.p + r.a), 2) - std::pow(std::sin(r.p), 2));
    const double z = z_holonomy(Loop(r));
    worst = std::max(worst, std::abs(z - closed_form));
    worst = std::max(worst, std::abs(z - 0.5 * area_rect_cp1(r)));
  }
  SuiteResult res;
  res.name = "vertical-displacement-law";
  res.threshold = threshold_for(opt, 1e-9);
  res.max_dev = worst;
  res.pass = res.max_dev < res.threshold;
  res.detail = "100 rectangles: quadrature vs closed form vs half the "
               "chart sphere area";
  return res;
}

SuiteResult suite_conformal_factor(const VerifyOptions& opt) {
  Rng base(opt.seed);
  double worst_norm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = base.fork(40000 + static_cast<std::uint64_t>(trial));
    const auto n = static_cast<Eigen::Index>(1 + rng.next_u64() % 3);
    const auto m = n + static_cast<Eigen::Index>(rng.next_u64() % 4);
    const double lambda = rng.uniform(0.5, 2.0);
    UmnElement x = random_umn(m, n, lambda, rng.next_u64());
    const double alpha = conformal_factor(x);  // asserts norms internally
    const Complex i(0.0, 1.0);
    const double rl = std::sqrt(x.lambda);
    const CMatrix bases[3] = {CMatrix(hat(x.x) / rl),
                              CMatrix(hat(CMatrix(i * x.x)) / rl),
                              CMatrix(k_matrix(x) / x.lambda)};
    for (const CMatrix& b : bases)
      worst_norm = std::max(
          worst_norm, std::abs(std::sqrt(inner_product(b, b)) - alpha));
  }

  // Independent first-fundamental-form areas against the closed-form chart
  // area: the ratio must be the squared conformal factor.
  struct MeshCase {
    Eigen::Index n, m;
    Rect rect;
  };
  static const MeshCase cases[] = {{1, 1, {0.15, 0.9, 0.4, 1.1}},
                                   {1, 2, {0.3, 0.7, 0.2, 0.9}},
                                   {2, 3, {0.2, 0.8, 0.1, 1.0}}};
  double worst_ratio = 0.0;
  std::vector<double> ratios;
  for (const MeshCase& c : cases) {
    Rng rng = base.fork(41000 + static_cast<std::uint64_t>(ratios.size()));
    UmnElement x = random_umn(c.m, c.n, rng.uniform(0.5, 2.0), rng.next_u64());
    const double numeric = area_numeric(HopfDisk{x}, c.rect, 64);
    const double ratio = numeric / area_model_B(Loop(c.rect));
    const double alpha_sq =
        conformal_factor_value(c.n, c.m) * conformal_factor_value(c.n, c.m);
    ratios.push_back(ratio);
    worst_ratio = std::max(worst_ratio, std::abs(ratio - alpha_sq));
  }

  SuiteResult res;
  res.name = "conformal-factor";
  res.threshold = threshold_for(opt, 1e-12);
  res.max_dev = worst_norm;
  const double ratio_threshold = threshold_for(opt, 1e-3);
  res.pass = worst_norm < res.threshold && worst_ratio < ratio_threshold;
  res.detail = fmt("100 basis-norm checks; mesh-area ratio error %.3e "
                   "(bound %.1e) on a 64x64 grid", worst_ratio, ratio_threshold);
  return res;
}

SuiteResult suite_bracket_formula(const VerifyOptions& opt) {
  Rng base(opt.seed);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rng rng = base.fork(50000 + static_cast<std::uint64_t>(trial));
    const auto n = static_cast<Eigen::Index>(1 + rng.next_u64() % 3);
    const auto m = n + static_cast<Eigen::Index>(rng.next_u64() % 3);
    const double scale = rng.uniform(0.3, 1.5);
    const CMatrix x = scale * rng.cgaussian_matrix(m, n);
    const CMatrix y = scale * rng.cgaussian_matrix(m, n);
    const CMatrix direct = triple_bracket_direct(hat(x), hat(y), hat(x));
    const CMatrix via_formula = hat(triple_bracket_formula(x, y));
    worst = std::max(worst, max_abs(CMatrix(direct - via_formula)));
  }
  SuiteResult res;
  res.name = "bracket-formula";
  res.threshold = threshold_for(opt, 1e-12);
  res.max_dev = worst;
  res.pass = res.max_dev < res.threshold;
  res.detail = "1000 random pairs: column-wise formula vs direct double "
               "commutator";
  return res;
}

SuiteResult suite_fiber_exponential(const VerifyOptions& opt) {
  Rng base(opt.seed);
  double worst = 0.0;
  static const double phases[] = {-2.7, -0.9, 0.6, 1.8, 3.1};
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = base.fork(60000 + static_cast<std::uint64_t>(trial));
    const auto n = static_cast<Eigen::Index>(1 + rng.next_u64() % 3);
    const auto m = n + static_cast<Eigen::Index>(rng.next_u64() % 3);
    UmnElement x = random_umn(m, n, rng.uniform(0.5, 2.0), rng.next_u64());
    const CMatrix k = k_matrix(x);
    for (int g = 0; g <= 24; ++g) {
      const double theta = -kTwoPi + g * (2.0 * kTwoPi / 24.0);
      const CMatrix closed = fiber_exp(theta, x);
      const CMatrix exp_route = matrix_exp(CMatrix(-(theta / x.lambda) * k));
      worst = std::max(worst, max_abs(CMatrix(closed - exp_route)));
    }
    for (double theta : phases) {
      for (double phi : phases) {
        const CMatrix lhs =
            CMatrix(fiber_exp(theta, x) * fiber_exp(phi, x));
        worst = std::max(
            worst, max_abs(CMatrix(lhs - fiber_exp(theta + phi, x))));
      }
    }
  }
  SuiteResult res;
  res.name = "fiber-exponential";
  res.threshold = threshold_for(opt, 1e-10);
  res.max_dev = worst;
  res.pass = res.max_dev < res.threshold;
  res.detail = "100 frames: closed form vs matrix exponential on a 25-point "
               "phase grid, plus the one-parameter group law";
  return res;
}

SuiteResult suite_geodesic_condition(const VerifyOptions& opt) {
  static const ShapeNM shapes[] = {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}};
  static const ShapeNM hopf_shapes[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 5}};
  Rng base(opt.seed);

  std::vector<double> geo(100, 0.0), counter(50, 0.0);
  std::vector<int> verdict_ok(150, 1);
  parallel_for(150, opt.threads, [&](int task) {
    Rng rng = base.fork(70000 + static_cast<std::uint64_t>(task));
    if (task < 50) {  // flat pairs
      const ShapeNM s = shapes[task / 10];
      const double mu = rng.uniform(-0.7, 0.7);
      const double eta = mu * mu + rng.uniform(0.3, 1.5);
      FlatPair fp = flat_pair_generate(s.m, s.n, mu, eta, rng.next_u64());
      ClosureVerdict v = span_closure_check(GeodesicSurface(fp));
      geo[static_cast<std::size_t>(task)] = v.residual;
      verdict_ok[static_cast<std::size_t>(task)] = v.is_geodesic ? 1 : 0;
    } else if (task < 100) {  // Hopf disks
      const ShapeNM s = hopf_shapes[(task - 50) / 10];
      UmnElement x =
          random_umn(s.m, s.n, rng.uniform(0.5, 2.0), rng.next_u64());
      ClosureVerdict v = span_closure_check(GeodesicSurface(HopfDisk{x}));
      geo[static_cast<std::size_t>(task)] = v.residual;
      verdict_ok[static_cast<std::size_t>(task)] = v.is_geodesic ? 1 : 0;
    } else {  // counterexamples: non-real pairing scalar
      const ShapeNM s = shapes[(task - 100) / 10];
      const double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
      const Complex mu(rng.uniform(-0.5, 0.5),
                       sign * rng.uniform(0.3, 0.8));
      const double eta = std::norm(mu) + rng.uniform(0.4, 1.2);
      SurfacePair sp = counterexample_pair(s.m, s.n, mu, eta, rng.next_u64());
      ClosureVerdict v = span_closure_check({sp.x.x, sp.y.x});
      counter[static_cast<std::size_t>(task - 100)] = v.residual;
      verdict_ok[static_cast<std::size_t>(task)] = v.is_geodesic ? 0 : 1;
    }
  });

  const double geo_max = *std::max_element(geo.begin(), geo.end());
  const double counter_min =
      *std::min_element(counter.begin(), counter.end());
  const bool verdicts =
      std::all_of(verdict_ok.begin(), verdict_ok.end(), [](int v) { return v; });

  SuiteResult res;
  res.name = "geodesic-condition";
  res.threshold = threshold_for(opt, 1e-10);
  res.max_dev = geo_max;
  const double counter_bound = 1e-6;
  res.pass = verdicts && geo_max < res.threshold && counter_min > counter_bound;
  res.detail = fmt("100 closed planes (residual max %.3e) and 50 non-closed "
                   "planes (residual min %.3e, bound %.0e)",
                   geo_max, counter_min, counter_bound);
  return res;
}

SuiteResult suite_hopf_projection(const VerifyOptions& opt) {
  Rng base(opt.seed);
  double worst = 0.0;
  double min_nonfiber = 1e30;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = base.fork(80000 + static_cast<std::uint64_t>(trial));
    auto random_su2 = [&rng] {
      while (true) {
        double c[4] = {rng.gaussian(), rng.gaussian(), rng.gaussian(),
                       rng.gaussian()};
        const double norm =
            std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
        if (norm > 0.1)
          return Su2::make(c[0] / norm, c[1] / norm, c[2] / norm, c[3] / norm);
      }
    };
    const Su2 w = random_su2();

    // Fiber elements leave the projection fixed.
    const double z = rng.uniform(0.0, kTwoPi);
    const Su2 fiber = Su2::make(std::cos(z), std::sin(z), 0.0, 0.0);
    worst = std::max(worst, max_abs(CMatrix(hopf_p(w * fiber).matrix() -
                                            hopf_p(w).matrix())));

    // Generic elements move it.
    Su2 v = random_su2();
    while (std::sqrt(v.w3 * v.w3 + v.w4 * v.w4) < 0.3) v = random_su2();
    min_nonfiber = std::min(
        min_nonfiber,
        max_abs(CMatrix(hopf_p(w * v).matrix() - hopf_p(w).matrix())));

    // Restricted to the model surface the projection is the squaring map.
    const double xx = rng.uniform(0.05, 1.5);
    const double yy = rng.uniform(0.0, kTwoPi);
    worst = std::max(
        worst, max_abs(CMatrix(hopf_p(t_point(xx, yy)).matrix() -
                               t_point(2.0 * xx, yy).matrix())));
  }
  SuiteResult res;
  res.name = "hopf-projection";
  res.threshold = threshold_for(opt, 1e-12);
  res.max_dev = worst;
  const double nonfiber_bound = 1e-3;
  res.pass = res.max_dev < res.threshold && min_nonfiber > nonfiber_bound;
  res.detail = fmt("fiber invariance and squaring on 100 draws; smallest "
                   "non-fiber displacement %.3e (bound %.0e)",
                   min_nonfiber, nonfiber_bound);
  return res;
}

SuiteResult suite_isometric_embedding(const VerifyOptions& opt) {
  Rng base(opt.seed);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    Rng rng = base.fork(90000 + static_cast<std::uint64_t>(trial));
    const auto k = static_cast<Eigen::Index>(2 + rng.next_u64() % 5);
    const double scale = rng.uniform(0.3, 1.5);
    CMatrix ga = rng.cgaussian_matrix(k, k);
    CMatrix gb = rng.cgaussian_matrix(k, k);
    const CMatrix a = scale * 0.5 * (ga - ga.adjoint());
    const CMatrix b = scale * 0.5 * (gb - gb.adjoint());
    const double lhs = inner_product(a, b);
    const double rhs = inner_product_real(real_embedding(a), real_embedding(b));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  SuiteResult res;
  res.name = "isometric-embedding";
  res.threshold = threshold_for(opt, 1e-12);
  res.max_dev = worst;
  res.pass = res.max_dev < res.threshold;
  res.detail = "500 skew-Hermitian pairs: complex metric vs doubled real "
               "trace form";
  return res;
}

SuiteResult suite_integrator_quality(const VerifyOptions& opt) {
  Rng rng = Rng(opt.seed).fork(99000);
  UmnElement x = random_umn(3, 2, 1.3, rng.next_u64());
  const Rect rect{0.35, 0.8, 0.25, 1.3};
  const HolonomyReport predicted = holonomy_analytic(HopfDisk{x}, Loop(rect));
  LiftedPath path = lift_path_hopf(Loop(rect), x);

  static const int step_grid[] = {16, 32, 64, 128, 256, 512};
  std::vector<double> log_n, log_dev;
  double drift_at_512 = 0.0;
  std::string table;
  for (int steps : step_grid) {
    TransportResult t = holonomy_transport(path, x.n(), steps);
    const double dev = max_abs(CMatrix(t.v - predicted.v_predicted));
    if (steps == 512) drift_at_512 = t.drift;
    log_n.push_back(std::log(static_cast<double>(steps)));
    log_dev.push_back(std::log(std::max(dev, 1e-300)));
    table += fmt(" %d:%.2e", steps, dev);
  }

  // Least-squares slope of log(dev) against log(steps); a 4th-order method
  // gives -4.
  const std::size_t count = log_n.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < count; ++i) {
    sx += log_n[i];
    sy += log_dev[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_dev[i];
  }
  const double slope =
      (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double order = -slope;

  SuiteResult res;
  res.name = "integrator-quality";
  res.threshold = threshold_for(opt, 0.3);
  res.max_dev = std::abs(order - 4.0);
  const double drift_bound = 1e-10;
  res.pass = res.max_dev < res.threshold && drift_at_512 < drift_bound;
  res.detail = fmt("convergence order %.3f; unitarity drift %.3e at 512 "
                   "steps (bound %.0e); deviations%s",
                   order, drift_at_512, drift_bound, table.c_str());
  return res;
}

}  // namespace

int thread_count_from_env() {
  const char* env = std::getenv("HOLONOMY_LAB_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return std::max(1, std::min(v, 64));
}

std::vector<SuiteResult> verify_all(const VerifyOptions& options) {
  return {suite_holonomy_area_law(options),
          suite_flatness(options),
          suite_cp1_law(options),
          suite_conformal_factor(options),
          suite_bracket_formula(options),
          suite_fiber_exponential(options),
          suite_geodesic_condition(options),
          suite_hopf_projection(options),
          suite_isometric_embedding(options),
          suite_integrator_quality(options)};
}

}  // namespace holab
