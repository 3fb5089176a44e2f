#include "isodiam/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hull.hpp"
#include "isodiam/linalg.hpp"

namespace isodiam {

// ---------------------------------------------------------------- LinearMap

LinearMap::LinearMap(Eigen::MatrixXd m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw ShapeMismatch("LinearMap: matrix must be square and nonempty");
  }
  det_ = matrix_.determinant();
  if (!std::isfinite(det_) || det_ == 0.0) {
    throw DegenerateInput("LinearMap: matrix is singular",
                          static_cast<int>(matrix_.fullPivLu().rank()));
  }
}

LinearMap LinearMap::identity(int n) {
  return LinearMap(Eigen::MatrixXd::Identity(n, n));
}

LinearMap LinearMap::inverse() const { return LinearMap(matrix_.inverse()); }

LinearMap LinearMap::compose(const LinearMap& inner) const {
  return LinearMap(matrix_ * inner.matrix_);
}

// ------------------------------------------------------------- DirectionSet

namespace {

bool same_line(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double t) {
  return (u - v).norm() <= t || (u + v).norm() <= t;
}

}  // namespace

DirectionSet::DirectionSet(int dim, std::vector<Eigen::VectorXd> dirs,
                           double tolerance, bool symmetric)
    : dim_(dim), tolerance_(tolerance) {
  for (auto& d : dirs) {
    const double nrm = d.norm();
    if (nrm == 0.0) throw ParamOutOfRange("DirectionSet: zero direction");
    d /= nrm;
  }
  for (const auto& d : dirs) {
    bool dup = false;
    for (const auto& e : dirs_) {
      if ((d - e).norm() <= tol::direction_dedupe) {
        dup = true;
        break;
      }
    }
    if (!dup) dirs_.push_back(d);
  }
  if (symmetric) {
    const std::size_t base = dirs_.size();
    for (std::size_t i = 0; i < base; ++i) {
      bool has_neg = false;
      for (const auto& e : dirs_) {
        if ((dirs_[i] + e).norm() <= tol::direction_dedupe) {
          has_neg = true;
          break;
        }
      }
      if (!has_neg) dirs_.push_back(-dirs_[i]);
    }
  }
}

std::vector<Eigen::VectorXd> DirectionSet::antipodal_classes() const {
  std::vector<Eigen::VectorXd> classes;
  for (const auto& d : dirs_) {
    bool seen = false;
    for (const auto& c : classes) {
      if (same_line(d, c, tol::direction_dedupe)) {
        seen = true;
        break;
      }
    }
    if (!seen) classes.push_back(d);
  }
  return classes;
}

// ----------------------------------------------------------------- Polytope

namespace {

std::vector<Eigen::VectorXd> dedupe_points(
    const std::vector<Eigen::VectorXd>& points, double scale) {
  const double t = tol::point_dedupe * std::max(1.0, scale);
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : out) {
      if ((p - q).norm() <= t) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

double max_norm(const std::vector<Eigen::VectorXd>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.norm());
  return s;
}

// is p a convex combination of the others? solved as NNLS on [points; 1]
bool in_convex_hull_of(const Eigen::VectorXd& p,
                       const std::vector<Eigen::VectorXd>& others,
                       double scale) {
  const int n = static_cast<int>(p.size());
  Eigen::MatrixXd a(n + 1, static_cast<int>(others.size()));
  for (std::size_t j = 0; j < others.size(); ++j) {
    a.col(static_cast<int>(j)).head(n) = others[j];
    a(n, static_cast<int>(j)) = 1.0;
  }
  Eigen::VectorXd b(n + 1);
  b.head(n) = p;
  b(n) = 1.0;
  const auto fit = linalg::nnls(a, b);
  return fit.residual <= tol::vertex_strip * std::max(1.0, scale);
}

}  // namespace

Polytope Polytope::from_points(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw DegenerateInput("empty point set", 0);
  const int n = static_cast<int>(points[0].size());
  if (n < 1) throw DegenerateInput("points must have dimension >= 1", 0);
  for (const auto& p : points) {
    if (p.size() != n) throw ShapeMismatch("points of mixed dimension");
  }

  const double scale = max_norm(points);
  std::vector<Eigen::VectorXd> pts = dedupe_points(points, scale);

  const int rank = linalg::affine_rank(pts);
  if (rank < n) {
    throw DegenerateInput("points span a proper affine subspace (rank " +
                              std::to_string(rank) + " < " +
                              std::to_string(n) + ")",
                          rank);
  }

  // cheap interior rejection against a provisional hull, then the exact
  // convex-combination test for the surviving boundary points
  detail::Hull rough = detail::build_hull(pts, scale);
  const double interior_gap = tol::hull * std::max(1.0, scale);
  std::vector<Eigen::VectorXd> verts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : rough.facets) {
      worst = std::max(worst, f.normal.dot(pts[i]) - f.offset);
    }
    if (worst < -interior_gap) continue;  // strictly interior
    std::vector<Eigen::VectorXd> others;
    others.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    if (!in_convex_hull_of(pts[i], others, scale)) verts.push_back(pts[i]);
  }

  Polytope p;
  p.finish(std::move(verts));
  return p;
}

Polytope Polytope::from_vertices(std::vector<Eigen::VectorXd> vertices) {
  if (vertices.empty()) throw DegenerateInput("empty vertex set", 0);
  Polytope p;
  p.finish(std::move(vertices));
  return p;
}

void Polytope::finish(std::vector<Eigen::VectorXd> verts) {
  dim_ = static_cast<int>(verts[0].size());
  vertices_ = std::move(verts);

  const double scale = max_norm(vertices_);
  detail::Hull hull = detail::build_hull(vertices_, scale);
  volume_ = hull.volume;
  facets_.clear();
  for (auto& f : hull.facets) {
    facets_.push_back({std::move(f.normal), f.offset, std::move(f.vertices)});
  }
  facet_simplices_.clear();
  for (auto& f : hull.simplicial) facet_simplices_.push_back(f.vertices);

  diameter_ = 0.0;
  diameter_pairs_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      diameter_ = std::max(diameter_, (vertices_[i] - vertices_[j]).norm());
    }
  }
  const double admit = (1.0 - 1e-9) * diameter_;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      if ((vertices_[i] - vertices_[j]).norm() >= admit) {
        diameter_pairs_.emplace_back(static_cast<int>(i),
                                     static_cast<int>(j));
      }
    }
  }
}

double Polytope::support(const Eigen::VectorXd& u) const {
  if (u.size() != dim_) throw ShapeMismatch("support: direction dimension");
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) h = std::max(h, v.dot(u));
  return h;
}

double Polytope::width(const Eigen::VectorXd& u) const {
  if (u.norm() == 0.0) throw ParamOutOfRange("width: zero direction");
  return support(u) + support(-u);
}

Polytope Polytope::transformed(const LinearMap& a) const {
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(vertices_.size());
  for (const auto& v : vertices_) verts.push_back(a(v));
  return from_vertices(std::move(verts));
}

Polytope Polytope::translated(const Eigen::VectorXd& t) const {
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(vertices_.size());
  for (const auto& v : vertices_) verts.push_back(v + t);
  return from_vertices(std::move(verts));
}

Polytope Polytope::scaled(double s) const {
  if (s == 0.0) throw ParamOutOfRange("scaled: zero factor");
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(vertices_.size());
  for (const auto& v : vertices_) verts.push_back(s * v);
  return from_vertices(std::move(verts));
}

bool Polytope::is_origin_symmetric(double tol) const {
  const double t = tol * std::max(1.0, max_vertex_norm());
  for (const auto& v : vertices_) {
    bool found = false;
    for (const auto& w : vertices_) {
      if ((v + w).norm() <= t) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

double Polytope::max_vertex_norm() const { return max_norm(vertices_); }

bool Polytope::contains(const Eigen::VectorXd& x, double tol) const {
  const double t = tol * std::max(1.0, max_vertex_norm());
  for (const auto& f : facets_) {
    if (f.normal.dot(x) > f.offset + t) return false;
  }
  return true;
}

// ---------------------------------------------------------------- free ops

DirectionSet diametrical_directions(const Polytope& p, double rel_tol) {
  if (rel_tol < 0.0 || rel_tol > 0.01) {
    throw ParamOutOfRange("diametrical_directions: rel_tol outside [0, 0.01]");
  }
  const auto& verts = p.vertices();
  const double admit = (1.0 - rel_tol) * p.diameter();
  std::vector<Eigen::VectorXd> dirs;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      Eigen::VectorXd d = verts[i] - verts[j];
      const double len = d.norm();
      if (len >= admit) dirs.push_back(d / len);
    }
  }
  return DirectionSet(p.dim(), std::move(dirs), rel_tol, /*symmetric=*/true);
}

Polytope difference_body(const Polytope& p) {
  if (p.is_origin_symmetric()) return p.scaled(2.0);
  const auto& verts = p.vertices();
  std::vector<Eigen::VectorXd> diffs;
  diffs.reserve(verts.size() * verts.size());
  for (const auto& v : verts) {
    for (const auto& w : verts) {
      if (&v != &w) diffs.push_back(v - w);
    }
  }
  return Polytope::from_points(diffs);
}

namespace {

// one subgradient descent pass on u -> width(p, u) over the sphere
Eigen::VectorXd refine_width_direction(const Polytope& dbody,
                                       Eigen::VectorXd u) {
  for (int it = 0; it < 100; ++it) {
    // active vertex of the difference body = gradient of its support
    const auto& verts = dbody.vertices();
    int act = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const double s = verts[i].dot(u);
      if (s > best) {
        best = s;
        act = static_cast<int>(i);
      }
    }
    Eigen::VectorXd g = verts[act] - best * u;  // tangential component
    if (g.norm() <= tol::descent_step) break;
    double step = 1.0;
    const double w0 = dbody.support(u);
    Eigen::VectorXd next = u;
    bool moved = false;
    while (step > tol::descent_step) {
      Eigen::VectorXd cand = (u - step * g).normalized();
      if (dbody.support(cand) < w0 - 1e-15) {
        next = cand;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved || (next - u).norm() <= tol::descent_step) break;
    u = next;
  }
  return u;
}

}  // namespace

MinWidthResult min_width(const Polytope& p) {
  const Polytope dbody = difference_body(p);

  std::vector<Eigen::VectorXd> candidates;
  for (const auto& f : dbody.facets()) {
    candidates.push_back(refine_width_direction(dbody, f.normal));
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& u : candidates) best = std::min(best, dbody.support(u));

  std::vector<Eigen::VectorXd> minimizers;
  for (const auto& u : candidates) {
    if (dbody.support(u) <= best * (1.0 + tol::min_width_rel)) {
      minimizers.push_back(u);
    }
  }
  return {best, DirectionSet(p.dim(), std::move(minimizers),
                             tol::min_width_rel, /*symmetric=*/true)};
}

Polytope polar(const Polytope& p) {
  const double t = tol::hull * std::max(1.0, p.max_vertex_norm());
  const auto& fs = p.facets();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].offset <= t) {
      throw OriginNotInterior(
          "polar: origin is not strictly interior (facet " +
              std::to_string(i) + " has offset " + std::to_string(fs[i].offset) +
              ")",
          static_cast<int>(i));
    }
  }
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(fs.size());
  for (const auto& f : fs) verts.push_back(f.normal / f.offset);
  return Polytope::from_vertices(std::move(verts));
}

double iq(const Polytope& p) {
  return p.volume() / std::pow(p.diameter(), p.dim());
}

double iwq(const Polytope& p) {
  return p.volume() / std::pow(min_width(p).value, p.dim());
}

double subspace_angle(const std::vector<Eigen::VectorXd>& basis,
                      const Eigen::VectorXd& v) {
  if (basis.empty()) throw RankDeficientBasis("subspace_angle: empty basis");
  if (v.norm() == 0.0) throw ParamOutOfRange("subspace_angle: zero vector");
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd b(n, static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != n) throw ShapeMismatch("subspace_angle: dimension");
    b.col(static_cast<int>(j)) = basis[j];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<int>(basis.size())) {
    throw RankDeficientBasis("subspace_angle: basis is rank deficient");
  }
  Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, qr.rank());
  const double cosv =
      std::clamp((q.transpose() * v).norm() / v.norm(), 0.0, 1.0);
  return std::acos(cosv);
}

}  // namespace isodiam
