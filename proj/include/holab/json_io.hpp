#pragma once

#include <json.hpp>
#include <string>

#include "holab/holonomy.hpp"
#include "holab/lie.hpp"

namespace holab {

using Json = nlohmann::json;

// Shared matrix wire format: {"rows":R, "cols":C, "data":[[re,im],...]}
// with `data` in row-major order. Parsing validates shape, length and
// finiteness; errors are reported as ParseError.
Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j);

// Surface descriptors: {"type":"hopf","X":M} or {"type":"flat","X":M,"Y":M}.
// Parsing re-validates all invariants (NotUmn / NotScalar / non-real mu
// surface as their structured errors).
Json surface_to_json(const GeodesicSurface& s);
GeodesicSurface surface_from_json(const Json& j, double tol = kStructTol);

// Loops: {"type":"rect","p":..,"a":..,"q":..,"b":..},
//        {"type":"xy","points":[[x,y],...]} or
//        {"type":"uv","points":[[u,v],...]}.
Json loop_to_json(const Loop& l);
Loop loop_from_json(const Json& j);

// Full holonomy report (all fields).
Json report_to_json(const HolonomyReport& r);

// CLI loop argument: "rect:p,a,q,b" or the path of a loop JSON file.
Loop parse_loop_spec(const std::string& spec);

// File helpers (ParseError on IO or format problems).
CMatrix load_matrix_file(const std::string& path);
Json load_json_file(const std::string& path);

}  // namespace holab
