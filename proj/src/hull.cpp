#include "hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "isodiam/errors.hpp"
#include "isodiam/tolerances.hpp"

namespace isodiam::detail {
namespace {

// unit normal of the hyperplane through n points, via QR of the edge matrix
Eigen::VectorXd hyperplane_normal(const std::vector<Eigen::VectorXd>& pts,
                                  const std::vector<int>& vertices) {
  const int n = static_cast<int>(pts[0].size());
  Eigen::MatrixXd edges(n, n - 1);
  for (int i = 1; i < n; ++i) {
    edges.col(i - 1) = pts[vertices[i]] - pts[vertices[0]];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges);
  Eigen::MatrixXd q = qr.householderQ();
  return q.col(n - 1);
}

SimplicialFacet make_facet(const std::vector<Eigen::VectorXd>& pts,
                           std::vector<int> vertices,
                           const Eigen::VectorXd& interior) {
  SimplicialFacet f;
  f.normal = hyperplane_normal(pts, vertices);
  f.offset = f.normal.dot(pts[vertices[0]]);
  if (f.normal.dot(interior) > f.offset) {
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  f.vertices = std::move(vertices);
  return f;
}

// greedy pick of n+1 points spanning a fat initial simplex
std::vector<int> initial_simplex(const std::vector<Eigen::VectorXd>& pts,
                                 double tol) {
  const int n = static_cast<int>(pts[0].size());
  std::vector<int> chosen = {0};
  // farthest point from the first
  int far = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = (pts[i] - pts[0]).norm();
    if (d > best) {
      best = d;
      far = static_cast<int>(i);
    }
  }
  if (best <= tol) throw DegenerateInput("all points coincide", 0);
  chosen.push_back(far);

  Eigen::MatrixXd basis(n, n);  // orthonormal columns spanning the affine hull
  basis.col(0) = (pts[far] - pts[0]) / best;
  int k = 1;
  while (k < n) {
    int pick = -1;
    double pick_dist = tol;
    Eigen::VectorXd pick_res;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Eigen::VectorXd r = pts[i] - pts[0];
      r -= basis.leftCols(k) * (basis.leftCols(k).transpose() * r);
      const double d = r.norm();
      if (d > pick_dist) {
        pick_dist = d;
        pick = static_cast<int>(i);
        pick_res = r;
      }
    }
    if (pick < 0) {
      throw DegenerateInput("points span a proper affine subspace", k);
    }
    basis.col(k) = pick_res / pick_dist;
    chosen.push_back(pick);
    ++k;
  }
  return chosen;
}

}  // namespace

Hull build_hull(const std::vector<Eigen::VectorXd>& pts, double scale) {
  const int n = static_cast<int>(pts[0].size());
  const double beyond_tol = tol::hull * std::max(1.0, scale);

  if (n == 1) {
    // segment: two facets, volume = length
    int lo = 0, hi = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i](0) < pts[lo](0)) lo = static_cast<int>(i);
      if (pts[i](0) > pts[hi](0)) hi = static_cast<int>(i);
    }
    if (pts[hi](0) - pts[lo](0) <= beyond_tol) {
      throw DegenerateInput("all points coincide", 0);
    }
    Hull h;
    Eigen::VectorXd up(1), dn(1);
    up << 1.0;
    dn << -1.0;
    h.simplicial = {{{hi}, up, pts[hi](0)}, {{lo}, dn, -pts[lo](0)}};
    h.facets = {{up, pts[hi](0), {hi}}, {dn, -pts[lo](0), {lo}}};
    h.volume = pts[hi](0) - pts[lo](0);
    return h;
  }

  std::vector<int> seed = initial_simplex(pts, beyond_tol);
  Eigen::VectorXd interior = Eigen::VectorXd::Zero(n);
  for (int idx : seed) interior += pts[idx];
  interior /= static_cast<double>(seed.size());

  std::vector<SimplicialFacet> facets;
  for (int drop = 0; drop <= n; ++drop) {
    std::vector<int> verts;
    for (int i = 0; i <= n; ++i) {
      if (i != drop) verts.push_back(seed[i]);
    }
    facets.push_back(make_facet(pts, std::move(verts), interior));
  }

  // insert remaining points, farthest-out first for robustness
  std::vector<int> order;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::find(seed.begin(), seed.end(), static_cast<int>(i)) == seed.end()) {
      order.push_back(static_cast<int>(i));
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return pts[a].squaredNorm() > pts[b].squaredNorm();
  });

  for (int p : order) {
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (facets[f].normal.dot(pts[p]) - facets[f].offset > beyond_tol) {
        visible.push_back(f);
      }
    }
    if (visible.empty()) continue;  // interior or on the boundary

    // horizon = ridges appearing exactly once among the visible facets
    std::map<std::vector<int>, int> ridge_count;
    for (std::size_t f : visible) {
      const auto& fv = facets[f].vertices;
      for (int drop = 0; drop < n; ++drop) {
        std::vector<int> ridge;
        for (int i = 0; i < n; ++i) {
          if (i != drop) ridge.push_back(fv[i]);
        }
        std::sort(ridge.begin(), ridge.end());
        ridge_count[ridge]++;
      }
    }

    std::vector<SimplicialFacet> fresh;
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      std::vector<int> verts = ridge;
      verts.push_back(p);
      fresh.push_back(make_facet(pts, std::move(verts), interior));
    }

    std::vector<SimplicialFacet> kept;
    kept.reserve(facets.size() - visible.size() + fresh.size());
    std::size_t vi = 0;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (vi < visible.size() && visible[vi] == f) {
        ++vi;
        continue;
      }
      kept.push_back(std::move(facets[f]));
    }
    for (auto& f : fresh) kept.push_back(std::move(f));
    facets = std::move(kept);
  }

  Hull h;
  h.simplicial = std::move(facets);

  // centroid fan: every facet simplex spans a cone from the vertex centroid
  std::vector<int> hull_vertex_ids;
  for (const auto& f : h.simplicial) {
    for (int v : f.vertices) hull_vertex_ids.push_back(v);
  }
  std::sort(hull_vertex_ids.begin(), hull_vertex_ids.end());
  hull_vertex_ids.erase(
      std::unique(hull_vertex_ids.begin(), hull_vertex_ids.end()),
      hull_vertex_ids.end());
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
  for (int v : hull_vertex_ids) centroid += pts[v];
  centroid /= static_cast<double>(hull_vertex_ids.size());

  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  double vol = 0.0;
  Eigen::MatrixXd cone(n, n);
  for (const auto& f : h.simplicial) {
    for (int i = 0; i < n; ++i) cone.col(i) = pts[f.vertices[i]] - centroid;
    vol += std::abs(cone.determinant());
  }
  h.volume = vol / nfact;

  // merge coplanar simplicial facets
  const double merge_gap = tol::facet_merge * std::max(1.0, scale);
  for (const auto& f : h.simplicial) {
    MergedFacet* home = nullptr;
    for (auto& g : h.facets) {
      if ((g.normal - f.normal).lpNorm<Eigen::Infinity>() < tol::facet_merge &&
          std::abs(g.offset - f.offset) < merge_gap) {
        home = &g;
        break;
      }
    }
    if (!home) {
      h.facets.push_back({f.normal, f.offset, f.vertices});
    } else {
      for (int v : f.vertices) home->vertices.push_back(v);
    }
  }
  for (auto& g : h.facets) {
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                     g.vertices.end());
  }
  return h;
}

}  // namespace isodiam::detail
