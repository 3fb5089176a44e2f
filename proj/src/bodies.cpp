#include "isodiam/bodies.hpp"

#include <cmath>

namespace isodiam {

namespace {

void check_dim(int n) {
  if (n < 1 || n > 8) throw ParamOutOfRange("dimension must be in 1..8");
}

}  // namespace

Polytope make_cube(int n) {
  check_dim(n);
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
    verts.push_back(v);
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope make_crosspolytope(int n) {
  check_dim(n);
  std::vector<Eigen::VectorXd> verts;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v(i) = 1.0;
    verts.push_back(v);
    verts.push_back(-v);
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope make_regular_simplex(int n) {
  check_dim(n);
  // n+1 unit points with pairwise inner product -1/n: embed e_i - centroid
  // in R^{n+1}, rescale to the unit sphere, rotate the 1-perp hyperplane
  // onto R^n with an orthonormal basis.
  Eigen::MatrixXd basis(n + 1, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c(j) = 1.0;
    c.array() -= 1.0 / (n + 1);
    for (int k = 0; k < j; ++k) c -= basis.col(k).dot(c) * basis.col(k);
    basis.col(j) = c / c.norm();
  }
  const double scal = std::sqrt(static_cast<double>(n + 1) / n);
  std::vector<Eigen::VectorXd> verts;
  for (int i = 0; i <= n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
    e(i) = 1.0;
    e.array() -= 1.0 / (n + 1);
    verts.push_back(basis.transpose() * (scal * e));
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope make_icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);
  std::vector<Eigen::VectorXd> verts;
  for (int axis = 0; axis < 3; ++axis) {
    for (double a : {1.0, -1.0}) {
      for (double b : {phi, -phi}) {
        Eigen::VectorXd v(3);
        v(axis) = 0.0;
        v((axis + 1) % 3) = a * s;
        v((axis + 2) % 3) = b * s;
        verts.push_back(v);
      }
    }
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope make_sailing_boat(double r) {
  if (!(r > std::sqrt(3.0) / 2.0 && r <= 1.0)) {
    throw ParamOutOfRange("sailing_boat: need sqrt(3)/2 < r <= 1");
  }
  const double q = std::sqrt(std::max(0.0, 1.0 - r * r));
  std::vector<Eigen::VectorXd> pts;
  auto add = [&](double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    pts.push_back(v);
  };
  add(0.0, 1.0);
  add(std::sqrt(3.0) / 2.0, -0.5);
  add(-std::sqrt(3.0) / 2.0, -0.5);
  add(q, -r);
  add(-q, -r);
  return Polytope::from_points(pts);  // r = 1 collapses the last two
}

Polytope make_septagon(double eps) {
  if (!(eps > 0.0 && eps <= 0.1)) {
    throw ParamOutOfRange("septagon: need 0 < eps <= 0.1");
  }
  const double s = (1.0 - eps) / std::sqrt(2.0);
  const double r = 0.5 - eps;
  const double q = std::sqrt(1.0 - r * r);
  std::vector<Eigen::VectorXd> pts;
  auto add = [&](double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    pts.push_back(v);
  };
  add(s, s);
  add(-s, s);
  add(s, -s);
  add(-s, -s);
  add(0.0, 1.0);
  add(q, -r);
  add(-q, -r);
  return Polytope::from_points(pts);
}

Polytope make_triangle(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw ParamOutOfRange("triangle: need 0 <= r < 1");
  }
  const double q = std::sqrt(1.0 - r * r);
  std::vector<Eigen::VectorXd> pts;
  Eigen::VectorXd a(2), b(2), c(2);
  a << 0.0, 1.0;
  b << q, -r;
  c << -q, -r;
  return Polytope::from_vertices({a, b, c});
}

Polytope make_body(const std::string& kind, double param) {
  if (kind == "cube") return make_cube(static_cast<int>(param));
  if (kind == "crosspolytope") return make_crosspolytope(static_cast<int>(param));
  if (kind == "regular_simplex") return make_regular_simplex(static_cast<int>(param));
  if (kind == "icosahedron") return make_icosahedron();
  if (kind == "sailing_boat") return make_sailing_boat(param);
  if (kind == "septagon") return make_septagon(param);
  if (kind == "triangle") return make_triangle(param);
  throw ParamOutOfRange("unknown body kind: " + kind);
}

}  // namespace isodiam
