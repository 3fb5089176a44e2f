#pragma once

#include <Eigen/Dense>
#include <vector>

// Incremental (beneath-beyond) convex hull for full-dimensional point sets
// in small dimension. Facets are kept simplicial; coplanar ones are merged
// into the polytope's true facet list afterwards.

namespace isodiam::detail {

struct SimplicialFacet {
  std::vector<int> vertices;  // n point indices
  Eigen::VectorXd normal;     // unit, outward
  double offset;              // normal . v = offset on the facet
};

struct MergedFacet {
  Eigen::VectorXd normal;
  double offset;
  std::vector<int> vertices;  // all hull points on the hyperplane
};

struct Hull {
  std::vector<SimplicialFacet> simplicial;
  std::vector<MergedFacet> facets;
  double volume = 0.0;
};

// Points must affinely span R^n (caller checks rank first). `scale` sets
// the absolute tolerance floor, typically the max point norm.
Hull build_hull(const std::vector<Eigen::VectorXd>& pts, double scale);

}  // namespace isodiam::detail
