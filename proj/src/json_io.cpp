#include "holab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace holab {

Json matrix_to_json(const CMatrix& a) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      data.push_back({a(i, j).real(), a(i, j).imag()});
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", data}};
}

CMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (rows < 1 || cols < 1)
      throw ParseError("matrix JSON: dimensions must be at least 1");
    if (!data.is_array() ||
        data.size() != static_cast<std::size_t>(rows * cols))
      throw ParseError("matrix JSON: data length must equal rows*cols");
    CMatrix a(rows, cols);
    std::size_t p = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index jj = 0; jj < cols; ++jj) {
        const Json& e = data[p++];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
            !e[1].is_number())
          throw ParseError("matrix JSON: entries must be [re, im] pairs");
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
          throw ParseError("matrix JSON: entries must be finite");
        a(i, jj) = Complex(re, im);
      }
    }
    return a;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
}

Json surface_to_json(const GeodesicSurface& s) {
  if (std::holds_alternative<HopfDisk>(s))
    return Json{{"type", "hopf"},
                {"X", matrix_to_json(std::get<HopfDisk>(s).x.x)}};
  const FlatPair& fp = std::get<FlatPair>(s);
  return Json{{"type", "flat"},
              {"X", matrix_to_json(fp.x.x)},
              {"Y", matrix_to_json(fp.y.x)}};
}

GeodesicSurface surface_from_json(const Json& j, double tol) {
  std::string type;
  try {
    type = j.at("type").get<std::string>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("surface JSON: ") + e.what());
  }
  if (type == "hopf") {
    if (!j.contains("X")) throw ParseError("surface JSON: hopf needs X");
    return HopfDisk{validate_umn(matrix_from_json(j.at("X")), tol)};
  }
  if (type == "flat") {
    if (!j.contains("X") || !j.contains("Y"))
      throw ParseError("surface JSON: flat needs X and Y");
    UmnElement x = validate_umn(matrix_from_json(j.at("X")), tol);
    UmnElement y = validate_umn(matrix_from_json(j.at("Y")), tol);
    const Complex mu = pair_mu(x, y.x, tol);
    if (std::abs(mu.imag()) > tol)
      throw DomainError("surface JSON: flat pair needs a real pairing scalar");
    return FlatPair{x, y, mu.real(), y.lambda};
  }
  throw ParseError("surface JSON: type must be \"hopf\" or \"flat\"");
}

Json loop_to_json(const Loop& l) {
  if (std::holds_alternative<Rect>(l)) {
    const Rect& r = std::get<Rect>(l);
    return Json{
        {"type", "rect"}, {"p", r.p}, {"a", r.a}, {"q", r.q}, {"b", r.b}};
  }
  Json points = Json::array();
  if (std::holds_alternative<SampledXY>(l)) {
    for (const ModelPoint& p : std::get<SampledXY>(l).points)
      points.push_back({p.x, p.y});
    return Json{{"type", "xy"}, {"points", points}};
  }
  for (const auto& p : std::get<SampledUV>(l).points)
    points.push_back({p[0], p[1]});
  return Json{{"type", "uv"}, {"points", points}};
}

Loop loop_from_json(const Json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "rect") {
      Rect r{j.at("p").get<double>(), j.at("a").get<double>(),
             j.at("q").get<double>(), j.at("b").get<double>()};
      validate_loop(Loop(r));
      return r;
    }
    if (type != "xy" && type != "uv")
      throw ParseError("loop JSON: type must be rect, xy or uv");
    const Json& pts = j.at("points");
    if (!pts.is_array()) throw ParseError("loop JSON: points must be an array");
    if (type == "xy") {
      SampledXY s;
      for (const Json& p : pts)
        s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      validate_loop(Loop(s));
      return s;
    }
    SampledUV s;
    for (const Json& p : pts)
      s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    validate_loop(Loop(s));
    return s;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("loop JSON: ") + e.what());
  }
}

Json report_to_json(const HolonomyReport& r) {
  return Json{{"V_measured", matrix_to_json(r.v_measured)},
              {"V_predicted", matrix_to_json(r.v_predicted)},
              {"theta_predicted", r.theta_predicted},
              {"area_model_B", r.area_model_b},
              {"area_surface_S", r.area_surface_s},
              {"deviation", r.deviation},
              {"steps", r.steps},
              {"flat", r.flat},
              {"drift", r.drift}};
}

Loop parse_loop_spec(const std::string& spec) {
  const std::string prefix = "rect:";
  if (spec.rfind(prefix, 0) == 0) {
    std::stringstream ss(spec.substr(prefix.size()));
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      std::string field;
      if (!std::getline(ss, field, ','))
        throw ParseError("loop spec: expected rect:p,a,q,b");
      try {
        std::size_t used = 0;
        vals[i] = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError("loop spec: bad number in rect:p,a,q,b");
      }
    }
    std::string extra;
    if (std::getline(ss, extra, ','))
      throw ParseError("loop spec: expected exactly four rect values");
    Rect r{vals[0], vals[1], vals[2], vals[3]};
    validate_loop(Loop(r));
    return r;
  }
  return loop_from_json(load_json_file(spec));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
}

CMatrix load_matrix_file(const std::string& path) {
  return matrix_from_json(load_json_file(path));
}

}  // namespace holab
