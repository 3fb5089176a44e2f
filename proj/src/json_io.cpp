#include "isodiam/json_io.hpp"

#include <fstream>
#include <sstream>

namespace isodiam::io {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, int expect_dim) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("expected a number in vector");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  if (expect_dim >= 0 && v.size() != expect_dim) {
    throw InputError("vector has dimension " + std::to_string(v.size()) +
                     ", expected " + std::to_string(expect_dim));
  }
  return v;
}

std::vector<Eigen::VectorXd> vectors_from_json(const nlohmann::json& j,
                                               int expect_dim,
                                               const char* what) {
  if (!j.is_array() || j.empty()) {
    throw InputError(std::string(what) + " must be a nonempty array");
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(vector_from_json(row, expect_dim));
  return out;
}

}  // namespace

nlohmann::json to_json(const Polytope& p) {
  nlohmann::json j;
  j["dim"] = p.dim();
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : p.vertices()) verts.push_back(vector_to_json(v));
  j["vertices"] = verts;
  return j;
}

nlohmann::json to_json(const Ellipsoid& e) {
  nlohmann::json j;
  j["dim"] = e.dim();
  j["shape"] = matrix_to_json(e.shape());
  j["center"] = vector_to_json(e.center());
  return j;
}

nlohmann::json to_json(const ContactData& c) {
  nlohmann::json j;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points) pts.push_back(vector_to_json(p));
  j["points"] = pts;
  j["weights"] = vector_to_json(c.weights);
  j["residual"] = c.residual;
  j["barycenter_residual"] = c.barycenter_residual;
  return j;
}

nlohmann::json to_json(const IdentityDecomposition& d) {
  nlohmann::json j;
  j["dim"] = d.dim;
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& u : d.directions) dirs.push_back(vector_to_json(u));
  j["directions"] = dirs;
  j["weights"] = vector_to_json(d.weights);
  j["residual"] = d.residual;
  return j;
}

nlohmann::json to_json(const DRWitness& w) {
  nlohmann::json j = to_json(w.decomposition);
  j["value"] = w.value;
  j["subset"] = w.subset;
  return j;
}

nlohmann::json to_json(const PositionCertificate& c) {
  nlohmann::json j;
  j["kind"] = c.kind == PositionKind::Behrend ? "behrend" : "isominwidth";
  j["map"] = matrix_to_json(c.map.matrix());
  j["quotient_before"] = c.quotient_before;
  j["quotient_after"] = c.quotient_after;
  j["decomposition"] = to_json(c.decomposition);
  j["residual"] = c.residual;
  return j;
}

Polytope polytope_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices")) {
    throw InputError("polytope JSON needs \"dim\" and \"vertices\"");
  }
  if (!j["dim"].is_number_integer()) throw InputError("\"dim\" must be an integer");
  const int n = j["dim"].get<int>();
  auto verts = vectors_from_json(j["vertices"], n, "\"vertices\"");
  return Polytope::from_points(verts);
}

IdentityDecomposition decomposition_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("directions") ||
      !j.contains("weights")) {
    throw InputError(
        "decomposition JSON needs \"dim\", \"directions\", \"weights\"");
  }
  const int n = j["dim"].get<int>();
  auto dirs = vectors_from_json(j["directions"], n, "\"directions\"");
  Eigen::VectorXd w = vector_from_json(j["weights"], -1);
  if (w.size() != static_cast<int>(dirs.size())) {
    throw InputError("\"weights\" length must match \"directions\"");
  }
  return IdentityDecomposition::make(std::move(dirs), std::move(w));
}

nlohmann::json parse(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // recover line/column from the byte offset
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) +
                     ", column " + std::to_string(col));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_file(const std::string& path) {
  return parse(read_file(path));
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace isodiam::io
