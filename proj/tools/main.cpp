// holonomy-lab: command-line front end for the holonomy displacement
// laboratory. Exit codes: 0 success, 1 check failure or domain error,
// 2 usage / configuration error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "holab/json_io.hpp"
#include "holab/verify.hpp"

namespace {

using holab::CMatrix;
using holab::Complex;
using holab::FlatPair;
using holab::GeodesicSurface;
using holab::HopfDisk;
using holab::Json;
using holab::Loop;
using holab::Rect;
using holab::SampledUV;
using holab::UmnElement;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw holab::ParseError("cannot open output file: " + out_path);
  f << text;
  if (!f) throw holab::ParseError("cannot write output file: " + out_path);
}

std::vector<double> parse_doubles(const std::string& s, std::size_t expected,
                                  const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok =
        s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw holab::ParseError("bad " + what + " value: '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (expected != 0 && out.size() != expected)
    throw holab::ParseError(what + " expects " + std::to_string(expected) +
                            " comma-separated values, got '" + s + "'");
  return out;
}

std::vector<int> parse_ints(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_doubles(s, 0, what)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v || i <= 0)
      throw holab::ParseError(what + " expects positive integers, got '" + s +
                              "'");
    out.push_back(i);
  }
  return out;
}

// A --matrix-file argument may hold either a bare matrix or a full surface
// descriptor (as written by `generate`).
struct LoadedInput {
  std::optional<GeodesicSurface> surface;
  std::optional<CMatrix> matrix;
};

LoadedInput load_matrix_or_surface(const std::string& path) {
  const Json j = holab::load_json_file(path);
  LoadedInput in;
  if (j.is_object() && j.contains("type"))
    in.surface = holab::surface_from_json(j);
  else
    in.matrix = holab::matrix_from_json(j);
  return in;
}

FlatPair flat_pair_from_matrices(const CMatrix& x_raw, const CMatrix& y_raw) {
  UmnElement x = holab::validate_umn(x_raw);
  UmnElement y = holab::validate_umn(y_raw);
  const Complex mu = holab::pair_mu(x, y.x);
  if (std::abs(mu.imag()) > holab::kStructTol)
    throw holab::DomainError(
        "flat surface requires a real pairing scalar; got Im = " +
        std::to_string(mu.imag()));
  return FlatPair{x, y, mu.real(), y.lambda};
}

// ---- verify-all -----------------------------------------------------------

int run_verify_all(std::uint64_t seed, int steps,
                   std::optional<double> tol_override) {
  holab::VerifyOptions opt;
  opt.seed = seed;
  opt.steps = steps;
  opt.tol_override = tol_override;
  opt.threads = holab::thread_count_from_env();

  const std::vector<holab::SuiteResult> results = holab::verify_all(opt);
  bool all_pass = true;
  std::printf("%-26s %-6s %13s %10s\n", "suite", "status", "max deviation",
              "threshold");
  for (const holab::SuiteResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-26s %-6s %13.5e %10.1e\n", r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.max_dev, r.threshold);
    if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
  }
  std::printf("%s\n", all_pass ? "all suites passed" : "SUITE FAILURES");
  return all_pass ? 0 : 1;
}

// ---- holonomy -------------------------------------------------------------

int run_holonomy_cmd(const std::string& surface_case,
                     const std::string& loop_spec, Eigen::Index m,
                     Eigen::Index n, std::uint64_t seed, int steps, double tol,
                     const std::string& param, const std::string& matrix_file,
                     const std::string& matrix_file2,
                     const std::string& out_path) {
  GeodesicSurface surface = HopfDisk{};
  if (!matrix_file.empty()) {
    LoadedInput in = load_matrix_or_surface(matrix_file);
    if (in.surface) {
      surface = *in.surface;
    } else if (surface_case == "flat") {
      if (matrix_file2.empty())
        throw holab::ParseError(
            "--case flat with --matrix-file also needs --matrix-file2");
      surface =
          flat_pair_from_matrices(*in.matrix,
                                  holab::load_matrix_file(matrix_file2));
    } else {
      surface = HopfDisk{holab::validate_umn(*in.matrix)};
    }
  } else if (surface_case == "hopf") {
    surface = HopfDisk{holab::random_umn(m, n, 1.0, seed)};
  } else {  // flat, generated
    std::vector<double> p =
        parse_doubles(param.empty() ? "0.25,1.0" : param, 2, "--param");
    surface = holab::flat_pair_generate(m, n, p[0], p[1], seed);
  }

  Loop loop = holab::parse_loop_spec(loop_spec);
  // A rect spec for a flat surface means the axis-aligned coefficient
  // rectangle, traversed as a polygon.
  if (std::holds_alternative<FlatPair>(surface) &&
      std::holds_alternative<Rect>(loop)) {
    const Rect r = std::get<Rect>(loop);
    SampledUV uv;
    uv.points = {{r.p, r.q},
                 {r.p + r.a, r.q},
                 {r.p + r.a, r.q + r.b},
                 {r.p, r.q + r.b},
                 {r.p, r.q}};
    loop = uv;
  }

  const holab::HolonomyReport report = holab::run_holonomy(surface, loop, steps);
  write_output(holab::report_to_json(report).dump(2) + "\n", out_path);
  return report.deviation < tol ? 0 : 1;
}

// ---- check-geodesic -------------------------------------------------------

int run_check_geodesic(const std::string& matrix_file,
                       const std::string& matrix_file2, double tol,
                       const std::string& out_path) {
  Json out;
  try {
    // Accept a bare matrix, a surface descriptor, or a generated pair
    // object; a second matrix file supplies Y for a bare-matrix X.
    const Json j = holab::load_json_file(matrix_file);
    std::optional<UmnElement> x, y;
    if (j.is_object() && j.contains("type") && j["type"] == "pair") {
      x = holab::validate_umn(holab::matrix_from_json(j.at("X")));
      y = holab::validate_umn(holab::matrix_from_json(j.at("Y")));
    } else if (j.is_object() && j.contains("type")) {
      const GeodesicSurface s = holab::surface_from_json(j);
      if (const auto* fp = std::get_if<FlatPair>(&s)) {
        x = fp->x;
        y = fp->y;
      } else {
        x = std::get<HopfDisk>(s).x;
      }
    } else {
      x = holab::validate_umn(holab::matrix_from_json(j));
      if (!matrix_file2.empty())
        y = holab::validate_umn(holab::load_matrix_file(matrix_file2));
    }

    out["lambda"] = x->lambda;
    holab::ClosureVerdict verdict;
    if (!y) {
      out["basis"] = "x-ix";
      verdict = holab::span_closure_check(GeodesicSurface(HopfDisk{*x}), tol);
    } else {
      const Complex mu = holab::pair_mu(*x, y->x);
      out["basis"] = "x-y";
      out["mu"] = Json::array({mu.real(), mu.imag()});
      out["eta"] = y->lambda;
      verdict = holab::span_closure_check({x->x, y->x}, tol);
    }
    out["is_geodesic"] = verdict.is_geodesic;
    out["residual"] = verdict.residual;
    write_output(out.dump(2) + "\n", out_path);
    return verdict.is_geodesic ? 0 : 1;
  } catch (const holab::DomainError& e) {
    Json err;
    err["error"] = "domain";
    err["what"] = e.what();
    write_output(err.dump(2) + "\n", out_path);
    return 1;
  }
}

// ---- generate -------------------------------------------------------------

int run_generate(const std::string& gen_case, Eigen::Index m, Eigen::Index n,
                 std::uint64_t seed, const std::string& param,
                 const std::string& out_path) {
  Json out;
  if (gen_case == "hopf") {
    std::vector<double> p =
        parse_doubles(param.empty() ? "1.0" : param, 1, "--param");
    out = holab::surface_to_json(HopfDisk{holab::random_umn(m, n, p[0], seed)});
  } else if (gen_case == "flat") {
    std::vector<double> p =
        parse_doubles(param.empty() ? "0.25,1.0" : param, 2, "--param");
    out = holab::surface_to_json(
        holab::flat_pair_generate(m, n, p[0], p[1], seed));
  } else {  // counter: a pair whose plane is not totally geodesic
    std::vector<double> p =
        parse_doubles(param.empty() ? "0.25,0.5,1.5" : param, 3, "--param");
    holab::SurfacePair sp = holab::counterexample_pair(
        m, n, Complex(p[0], p[1]), p[2], seed);
    out["type"] = "pair";
    out["X"] = holab::matrix_to_json(sp.x.x);
    out["Y"] = holab::matrix_to_json(sp.y.x);
    out["mu"] = Json::array({sp.mu.real(), sp.mu.imag()});
    out["eta"] = sp.eta;
  }
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

// ---- sweep ----------------------------------------------------------------

int run_sweep(const std::string& param, const std::string& range_spec,
              Eigen::Index m, Eigen::Index n, std::uint64_t seed,
              const std::string& loop_spec, const std::string& matrix_file,
              const std::string& out_path) {
  const std::vector<int> range = parse_ints(range_spec, "--range");
  UmnElement x = matrix_file.empty()
                     ? holab::random_umn(m, n, 1.0, seed)
                     : holab::validate_umn(holab::load_matrix_file(matrix_file));
  const Loop loop = holab::parse_loop_spec(loop_spec);

  std::string csv;
  char row[160];
  if (param == "steps") {
    const holab::HolonomyReport predicted =
        holab::holonomy_analytic(HopfDisk{x}, loop);
    const holab::LiftedPath path = holab::lift_path_hopf(loop, x);
    csv = "steps,deviation,drift\n";
    for (int steps : range) {
      const holab::TransportResult t =
          holab::holonomy_transport(path, x.n(), steps);
      const double dev =
          holab::max_abs(CMatrix(t.v - predicted.v_predicted));
      std::snprintf(row, sizeof row, "%d,%.17g,%.17g\n", steps, dev, t.drift);
      csv += row;
    }
  } else if (param == "mesh") {
    if (!std::holds_alternative<Rect>(loop))
      throw holab::ParseError("--param mesh sweeps need a rect loop");
    const Rect rect = std::get<Rect>(loop);
    const double model = holab::area_model_B(loop);
    csv = "mesh,area_numeric,ratio\n";
    for (int mesh : range) {
      const double area = holab::area_numeric(HopfDisk{x}, rect, mesh);
      std::snprintf(row, sizeof row, "%d,%.17g,%.17g\n", mesh, area,
                    model == 0.0 ? 0.0 : area / model);
      csv += row;
    }
  } else {
    throw holab::ParseError("--param must be 'steps' or 'mesh' for sweep");
  }
  write_output(csv, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "holonomy-lab: holonomy displacement on unitary frame bundles over "
      "Grassmannians"};
  app.require_subcommand(1);

  // Shared option storage (each subcommand registers the flags it uses).
  std::uint64_t seed = 20240915;
  int steps = 512;
  Eigen::Index m = 2, n = 1;
  double tol = 1e-6;
  bool tol_given = false;
  std::string surface_case = "hopf";
  std::string loop_spec, out_path, param, range_spec;
  std::string matrix_file, matrix_file2;

  CLI::App* verify = app.add_subcommand(
      "verify-all", "run every verification suite and print a summary table");
  verify->add_option("--seed", seed, "base seed for all suites");
  verify->add_option("--steps", steps, "transport steps for the law suites");
  verify->add_option("--tol", tol, "override every suite threshold")
      ->each([&](const std::string&) { tol_given = true; });

  CLI::App* holonomy = app.add_subcommand(
      "holonomy", "transport one loop on one surface and print a JSON report");
  holonomy->add_option("--case", surface_case, "surface family: hopf | flat")
      ->check(CLI::IsMember({"hopf", "flat"}));
  holonomy->add_option("--loop", loop_spec,
                       "loop: rect:p,a,q,b or a loop JSON file")
      ->required();
  holonomy->add_option("--m", m, "frame ambient dimension");
  holonomy->add_option("--n", n, "frame rank");
  holonomy->add_option("--seed", seed, "seed for generated surfaces");
  holonomy->add_option("--steps", steps, "transport steps");
  holonomy->add_option("--tol", tol,
                       "deviation bound deciding the exit code (default 1e-6)");
  holonomy->add_option("--param", param,
                       "mu,eta for generated flat surfaces");
  holonomy->add_option("--matrix-file", matrix_file,
                       "matrix or surface JSON for the surface");
  holonomy->add_option("--matrix-file2", matrix_file2,
                       "second matrix JSON (flat surfaces)");
  holonomy->add_option("--out", out_path, "write the report here (else stdout)");

  CLI::App* check = app.add_subcommand(
      "check-geodesic",
      "bracket-closure verdict for the plane of one or two frame matrices");
  check->add_option("--matrix-file", matrix_file, "matrix JSON for X")
      ->required();
  check->add_option("--matrix-file2", matrix_file2,
                    "matrix JSON for Y (default plane: X, iX)");
  check->add_option("--tol", tol, "residual threshold for the verdict")
      ->each([&](const std::string&) { tol_given = true; });
  check->add_option("--out", out_path, "write the verdict here (else stdout)");

  CLI::App* generate = app.add_subcommand(
      "generate", "emit a seeded surface (or non-geodesic pair) as JSON");
  generate->add_option("--case", surface_case,
                       "hopf | flat | counter")
      ->check(CLI::IsMember({"hopf", "flat", "counter"}));
  generate->add_option("--m", m, "frame ambient dimension");
  generate->add_option("--n", n, "frame rank");
  generate->add_option("--seed", seed, "generation seed");
  generate->add_option("--param", param,
                       "hopf: lambda | flat: mu,eta | counter: re,im,eta");
  generate->add_option("--out", out_path, "write the JSON here (else stdout)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "CSV sweep of transport steps or area mesh size");
  sweep->add_option("--param", param, "swept parameter: steps | mesh")
      ->required();
  sweep->add_option("--range", range_spec, "comma-separated parameter values")
      ->required();
  sweep->add_option("--m", m, "frame ambient dimension");
  sweep->add_option("--n", n, "frame rank");
  sweep->add_option("--seed", seed, "surface seed");
  sweep->add_option("--loop", loop_spec, "loop spec (default rect:0.3,0.6,0.2,1)");
  sweep->add_option("--matrix-file", matrix_file, "matrix JSON for X");
  sweep->add_option("--out", out_path, "write the CSV here (else stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return run_verify_all(
          seed, steps,
          tol_given ? std::optional<double>(tol) : std::nullopt);
    if (holonomy->parsed())
      return run_holonomy_cmd(surface_case, loop_spec, m, n, seed, steps, tol,
                              param, matrix_file, matrix_file2, out_path);
    if (check->parsed())
      return run_check_geodesic(matrix_file, matrix_file2,
                                tol_given ? tol : holab::kStructTol, out_path);
    if (generate->parsed())
      return run_generate(surface_case, m, n, seed, param, out_path);
    if (sweep->parsed())
      return run_sweep(param, range_spec, m, n, seed,
                       loop_spec.empty() ? "rect:0.3,0.6,0.2,1" : loop_spec,
                       matrix_file, out_path);
  } catch (const holab::ParseError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const holab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
