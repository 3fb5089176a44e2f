#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "isodiam/errors.hpp"
#include "isodiam/tolerances.hpp"

namespace isodiam {

namespace detail {
struct Hull;
}

// Invertible linear transformation of R^n with its determinant cached.
class LinearMap {
 public:
  explicit LinearMap(Eigen::MatrixXd m);
  static LinearMap identity(int n);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double det() const { return det_; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    return matrix_ * x;
  }
  LinearMap inverse() const;
  // (*this) after `inner`
  LinearMap compose(const LinearMap& inner) const;

 private:
  Eigen::MatrixXd matrix_;
  double det_;
};

// A set of unit directions; closed under negation when `symmetric`.
class DirectionSet {
 public:
  DirectionSet(int dim, std::vector<Eigen::VectorXd> dirs, double tolerance,
               bool symmetric = true);

  int dim() const { return dim_; }
  const std::vector<Eigen::VectorXd>& directions() const { return dirs_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return dirs_.size(); }

  // one canonical representative per antipodal class
  std::vector<Eigen::VectorXd> antipodal_classes() const;

 private:
  int dim_;
  std::vector<Eigen::VectorXd> dirs_;
  double tolerance_;
};

// Facet of a polytope: unit outward normal, offset, incident vertex ids.
struct Facet {
  Eigen::VectorXd normal;
  double offset;
  std::vector<int> vertices;
};

// Full-dimensional convex polytope given by its extreme points. Redundant
// input points are stripped at construction; facet structure, volume and
// diameter are computed eagerly so values are freely shareable.
class Polytope {
 public:
  // build_polytope: validates affine span, strips non-extreme points
  static Polytope from_points(const std::vector<Eigen::VectorXd>& points);
  // trusted path: callers guarantee the points are exactly the vertex set
  static Polytope from_vertices(std::vector<Eigen::VectorXd> vertices);

  int dim() const { return dim_; }
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  double volume() const { return volume_; }
  double diameter() const { return diameter_; }
  const std::vector<std::pair<int, int>>& diameter_pairs() const {
    return diameter_pairs_;
  }

  double support(const Eigen::VectorXd& u) const;
  double width(const Eigen::VectorXd& u) const;

  Polytope transformed(const LinearMap& a) const;
  Polytope translated(const Eigen::VectorXd& t) const;
  Polytope scaled(double s) const;

  bool is_origin_symmetric(double tol = 1e-9) const;
  double max_vertex_norm() const;
  bool contains(const Eigen::VectorXd& x, double tol = tol::hull) const;

 private:
  Polytope() = default;
  void finish(std::vector<Eigen::VectorXd> verts);

  int dim_ = 0;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> facet_simplices_;
  double volume_ = 0.0;
  double diameter_ = 0.0;
  std::vector<std::pair<int, int>> diameter_pairs_;
};

// unit vectors (x - y)/|x - y| over vertex pairs within rel_tol of the
// diameter, deduplicated and closed under negation
DirectionSet diametrical_directions(const Polytope& p,
                                    double rel_tol = tol::diametrical_rel);

// conv{v - w}; detects o-symmetric input and returns 2P directly
Polytope difference_body(const Polytope& p);

struct MinWidthResult {
  double value;
  DirectionSet directions;
};

// global minimum of u -> width(p, u); candidates are the facet normals of
// the difference body, polished by spherical descent on the active pair
MinWidthResult min_width(const Polytope& p);

// polar body {x : x.y <= 1 for all y in P}; needs 0 strictly interior
Polytope polar(const Polytope& p);

double iq(const Polytope& p);   // volume / diameter^n
double iwq(const Polytope& p);  // volume / minwidth^n

// angle between span(basis) and v, in [0, pi/2]
double subspace_angle(const std::vector<Eigen::VectorXd>& basis,
                      const Eigen::VectorXd& v);

}  // namespace isodiam
