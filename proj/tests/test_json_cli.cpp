#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "holab/json_io.hpp"
#include "holab/rng.hpp"

using namespace holab;

namespace {

constexpr double kPi = 3.141592653589793;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

// Runs the CLI binary named by the HOLAB_CLI environment variable.
CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("HOLAB_CLI");
  REQUIRE(bin != nullptr);
  const std::string out_file = "cli_stdout.tmp";
  const std::string cmd =
      "\"" + std::string(bin) + "\" " + args + " > " + out_file + " 2>cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  return r;
}

}  // namespace

TEST_CASE("matrix wire format round trips exactly") {
  Rng rng(81);
  CMatrix a = rng.cgaussian_matrix(3, 2);
  a(0, 0) = Complex(kPi, -1.0 / 3.0);
  a(2, 1) = Complex(1e-300, 7e155);
  const Json j = matrix_to_json(a);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  CHECK(j["data"].size() == 6);
  const CMatrix back = matrix_from_json(j);
  REQUIRE(back.rows() == 3);
  // Bit-exact: serialization must not perturb stored values.
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 2; ++k) CHECK(back(i, k) == a(i, k));

  // Same through a text round trip.
  const CMatrix back2 = matrix_from_json(Json::parse(j.dump()));
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 2; ++k) CHECK(back2(i, k) == a(i, k));
}

TEST_CASE("matrix parsing rejects malformed input") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":2,"cols":1})")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(
                      R"({"rows":2,"cols":1,"data":[[1,0]]})")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(
                      R"({"rows":1,"cols":1,"data":[[1]]})")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(
                      R"({"rows":1,"cols":1,"data":[["x",0]]})")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(
                      R"({"rows":0,"cols":1,"data":[]})")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(
                      R"({"rows":1,"cols":1,"data":[[1,null]]})")),
                  ParseError);
}

TEST_CASE("surface descriptors round trip and re-validate") {
  const UmnElement x = random_umn(3, 1, 1.5, 82);
  const GeodesicSurface hopf = HopfDisk{x};
  const GeodesicSurface back = surface_from_json(surface_to_json(hopf));
  CHECK(max_abs(CMatrix(std::get<HopfDisk>(back).x.x - x.x)) == 0.0);

  const FlatPair fp = flat_pair_generate(4, 2, 0.4, 1.3, 83);
  const GeodesicSurface back2 = surface_from_json(surface_to_json(fp));
  const FlatPair& fp2 = std::get<FlatPair>(back2);
  CHECK(max_abs(CMatrix(fp2.y.x - fp.y.x)) == 0.0);
  CHECK(fp2.mu == doctest::Approx(0.4).epsilon(1e-12));

  // Parsing re-checks every invariant: perturbing one entry of a rank-2
  // frame breaks column orthogonality.
  Json bad_x = surface_to_json(HopfDisk{random_umn(3, 2, 1.0, 85)});
  bad_x["X"]["data"][1] = Json::array({5.0, 0.0});
  CHECK_THROWS_AS(surface_from_json(bad_x), NotUmnError);

  Json bad_pair;
  bad_pair["type"] = "flat";
  CMatrix xm(2, 1), ym(2, 1);
  xm << 1, 0;
  ym << Complex(0.0, 1.0) / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  bad_pair["X"] = matrix_to_json(xm);
  bad_pair["Y"] = matrix_to_json(ym);  // non-real pairing scalar
  CHECK_THROWS_AS(surface_from_json(bad_pair), DomainError);

  CHECK_THROWS_AS(surface_from_json(Json::parse(R"({"type":"torus"})")),
                  ParseError);
}

TEST_CASE("loop descriptors round trip") {
  const Loop r = Rect{0.1, 0.5, 2.0, 0.75};
  const Loop r2 = loop_from_json(loop_to_json(r));
  CHECK(std::get<Rect>(r2).b == 0.75);

  SampledXY xy;
  xy.points = {{0.2, 0.1}, {0.9, 0.4}, {0.5, 1.2}, {0.2, 0.1}};
  const Loop xy2 = loop_from_json(loop_to_json(Loop(xy)));
  CHECK(std::get<SampledXY>(xy2).points[2].y == 1.2);

  SampledUV uv;
  uv.points = {{0, 0}, {1, 0}, {0, 1}, {0, 0}};
  const Loop uv2 = loop_from_json(loop_to_json(Loop(uv)));
  CHECK(std::get<SampledUV>(uv2).points.size() == 4);

  CHECK_THROWS_AS(loop_from_json(Json::parse(R"({"type":"circle"})")),
                  ParseError);
  // Re-validation on parse.
  CHECK_THROWS_AS(
      loop_from_json(Json::parse(
          R"({"type":"rect","p":-1.0,"a":0.5,"q":0.0,"b":1.0})")),
      DomainError);
}

TEST_CASE("report serialization carries the full field set") {
  const UmnElement x = random_umn(2, 1, 1.0, 84);
  const HolonomyReport rep =
      run_holonomy(HopfDisk{x}, Loop(Rect{0.2, 0.4, 0.1, 0.9}), 128);
  const Json j = report_to_json(rep);
  for (const char* key :
       {"V_measured", "V_predicted", "theta_predicted", "area_model_B",
        "area_surface_S", "deviation", "steps", "flat", "drift"})
    CHECK(j.contains(key));
  CHECK(j["steps"] == 128);
  CHECK(j["flat"] == false);
  CHECK(j["theta_predicted"].get<double>() ==
        doctest::Approx(rep.theta_predicted));
  const CMatrix v = matrix_from_json(j["V_measured"]);
  CHECK(v.rows() == 1);
}

TEST_CASE("loop argument parsing") {
  const Loop r = parse_loop_spec("rect:0.1,0.25,0.5,1.5");
  CHECK(std::get<Rect>(r).a == 0.25);
  CHECK(std::get<Rect>(r).b == 1.5);

  CHECK_THROWS_AS(parse_loop_spec("rect:1,2"), ParseError);
  CHECK_THROWS_AS(parse_loop_spec("rect:a,b,c,d"), ParseError);
  CHECK_THROWS_AS(parse_loop_spec("no_such_file.json"), ParseError);

  SampledXY xy;
  xy.points = {{0.2, 0.1}, {0.9, 0.4}, {0.5, 1.2}, {0.2, 0.1}};
  spit("loop_arg.tmp.json", loop_to_json(Loop(xy)).dump());
  const Loop from_file = parse_loop_spec("loop_arg.tmp.json");
  CHECK(std::get<SampledXY>(from_file).points.size() == 4);
}

TEST_CASE("cli: holonomy reports are valid, passing and deterministic") {
  const std::string args =
      "holonomy --loop rect:0.2,0.4,0.1,0.9 --m 2 --n 1 --seed 3 --steps 128";
  const CliResult r1 = run_cli(args);
  CHECK(r1.exit_code == 0);
  const Json rep = Json::parse(r1.out);
  CHECK(rep["deviation"].get<double>() < 1e-6);
  CHECK(rep["steps"] == 128);

  const CliResult r2 = run_cli(args);
  CHECK(r2.out == r1.out);  // byte-identical for identical configuration

  const CliResult flat = run_cli(
      "holonomy --case flat --loop rect:0,1,0,1 --m 4 --n 2 --seed 5 "
      "--param 0.3,1.2 --steps 64");
  CHECK(flat.exit_code == 0);
  CHECK(Json::parse(flat.out)["flat"] == true);
}

TEST_CASE("cli: degenerate loop from the usage example") {
  const CliResult r = run_cli("holonomy --loop rect:0,0,0,0 --steps 64");
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.out)["theta_predicted"] == 0.0);
}

TEST_CASE("cli: geodesic verdicts with exit codes") {
  CMatrix xm(2, 1), ym(2, 1);
  xm << 1, 0;
  ym << Complex(0.0, 1.0) / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  spit("cg_x.tmp.json", matrix_to_json(xm).dump());
  spit("cg_y.tmp.json", matrix_to_json(ym).dump());

  const CliResult good = run_cli("check-geodesic --matrix-file cg_x.tmp.json");
  CHECK(good.exit_code == 0);
  CHECK(Json::parse(good.out)["is_geodesic"] == true);

  const CliResult bad = run_cli(
      "check-geodesic --matrix-file cg_x.tmp.json --matrix-file2 cg_y.tmp.json");
  CHECK(bad.exit_code == 1);
  const Json bj = Json::parse(bad.out);
  CHECK(bj["is_geodesic"] == false);
  CHECK(bj["residual"].get<double>() > 1e-6);

  // Structured domain failure: a frame whose columns are not orthogonal.
  CMatrix notumn(2, 2);
  notumn << 1, 1, 0, 1;
  spit("cg_bad.tmp.json", matrix_to_json(notumn).dump());
  const CliResult dom = run_cli("check-geodesic --matrix-file cg_bad.tmp.json");
  CHECK(dom.exit_code == 1);
  CHECK(Json::parse(dom.out)["error"] == "domain");
}

TEST_CASE("cli: generated surfaces feed back into the pipeline") {
  const CliResult gen = run_cli(
      "generate --case hopf --m 3 --n 1 --seed 11 --param 1.5 --out "
      "gen_surface.tmp.json");
  CHECK(gen.exit_code == 0);
  const Json j = Json::parse(slurp("gen_surface.tmp.json"));
  CHECK(j["type"] == "hopf");

  const CliResult rep = run_cli(
      "holonomy --matrix-file gen_surface.tmp.json --loop rect:0.3,0.5,0,1 "
      "--steps 64");
  CHECK(rep.exit_code == 0);
  CHECK(Json::parse(rep.out)["deviation"].get<double>() < 1e-5);

  // Generated descriptors feed check-geodesic directly.
  const CliResult surf_check =
      run_cli("check-geodesic --matrix-file gen_surface.tmp.json");
  CHECK(surf_check.exit_code == 0);
  CHECK(Json::parse(surf_check.out)["is_geodesic"] == true);

  const CliResult counter = run_cli(
      "generate --case counter --m 4 --n 2 --seed 12 --param 0.2,0.6,1.4 "
      "--out gen_pair.tmp.json");
  CHECK(counter.exit_code == 0);
  CHECK(Json::parse(slurp("gen_pair.tmp.json"))["type"] == "pair");
  const CliResult pair_check =
      run_cli("check-geodesic --matrix-file gen_pair.tmp.json");
  CHECK(pair_check.exit_code == 1);
  const Json pj = Json::parse(pair_check.out);
  CHECK(pj["is_geodesic"] == false);
  CHECK(pj["residual"].get<double>() > 1e-6);
  CHECK(pj["mu"][1].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("cli: sweep emits csv") {
  const CliResult r = run_cli(
      "sweep --param steps --range 32,64 --m 2 --n 1 --seed 2 "
      "--loop rect:0.3,0.6,0.2,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("steps,deviation,drift\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

  const CliResult mesh = run_cli(
      "sweep --param mesh --range 8,16 --m 2 --n 1 --seed 2 "
      "--loop rect:0.3,0.6,0.2,1");
  CHECK(mesh.exit_code == 0);
  CHECK(mesh.out.rfind("mesh,area_numeric,ratio\n", 0) == 0);
}

TEST_CASE("cli: usage errors exit with code 2") {
  CHECK(run_cli("holonomy").exit_code == 2);              // missing --loop
  CHECK(run_cli("no-such-command").exit_code == 2);       // unknown command
  CHECK(run_cli("holonomy --loop rect:1,2").exit_code == 2);
  CHECK(run_cli("sweep --param bogus --range 8").exit_code == 2);
  CHECK(run_cli("holonomy --loop rect:0,0,0,0 --case torus").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
