#pragma once

#include <string>

#include <json.hpp>

#include "isodiam/dr.hpp"
#include "isodiam/ellipsoid.hpp"
#include "isodiam/polytope.hpp"
#include "isodiam/positions.hpp"

// Wire formats. All CLI I/O flows through these:
//   Polytope       {"dim": n, "vertices": [[x1..xn], ...]}
//   Ellipsoid      {"dim": n, "shape": [[..]], "center": [..]}
//   ContactData    {"points": [[..]], "weights": [..], "residual": r,
//                   "barycenter_residual": rb}
//   Decomposition  {"dim": n, "directions": [[..]], "weights": [..],
//                   "residual": r}
//   Witness        decomposition fields + {"value": v, "subset": [..]}
//   Certificate    {"kind": .., "map": [[..]], "quotient_before": ..,
//                   "quotient_after": .., "decomposition": .., "residual": ..}

namespace isodiam::io {

nlohmann::json to_json(const Polytope& p);
nlohmann::json to_json(const Ellipsoid& e);
nlohmann::json to_json(const ContactData& c);
nlohmann::json to_json(const IdentityDecomposition& d);
nlohmann::json to_json(const DRWitness& w);
nlohmann::json to_json(const PositionCertificate& c);

Polytope polytope_from_json(const nlohmann::json& j);
IdentityDecomposition decomposition_from_json(const nlohmann::json& j);

// parse with line/column reporting on malformed input
nlohmann::json parse(const std::string& text);
nlohmann::json parse_file(const std::string& path);

std::string read_file(const std::string& path);

// FNV-1a over the raw bytes; stable across platforms
std::string content_digest(const std::string& bytes);

}  // namespace isodiam::io
