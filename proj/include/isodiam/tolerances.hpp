#pragma once

// All numeric tolerances used across the library live here. Geometry
// predicates assume bodies at circumradius O(1); absolute tolerances are
// rescaled by the data's max norm where noted.

namespace isodiam::tol {

// hull predicates: a point is "beyond" a facet if a.p - b > hull * scale
inline constexpr double hull = 1e-10;

// coincident input points are merged below this distance (times scale)
inline constexpr double point_dedupe = 1e-9;

// convex-combination residual above which a point counts as extreme
inline constexpr double vertex_strip = 1e-8;

// coplanar simplicial hull facets are merged below these gaps
inline constexpr double facet_merge = 1e-8;

// unit directions u, v are one class if min(|u-v|, |u+v|) <= this
inline constexpr double direction_dedupe = 1e-8;

// relative slack admitting a vertex pair as diametrical (exact fixtures)
inline constexpr double diametrical_rel = 1e-9;

// MVEE solver: duality-gap target and iteration cap
inline constexpr double mvee_eps = 1e-8;
inline constexpr long mvee_max_iterations = 1'000'000;

// contact admission: v'Mv >= 1 - contact_factor * eps
inline constexpr double contact_factor = 10.0;

// contact weights below this are pruned before the NNLS re-fit
inline constexpr double weight_prune = 1e-9;

// NNLS stops when the dual gradient drops below this
inline constexpr double nnls_gradient = 1e-12;

// Behrend certification chain: solver eps 1e-8 -> contact 1e-7 ->
// diametrical admission 1e-6 -> decomposition residual 1e-4
inline constexpr double behrend_diametrical_rel = 1e-6;
inline constexpr double behrend_fit = 1e-4;

// isominwidth certificates accept a looser fit (width directions come
// from refined facet normals, not exact arithmetic)
inline constexpr double isominwidth_fit = 1e-3;

// min-width: directions within (1 + this) of the optimum are reported
inline constexpr double min_width_rel = 1e-7;

// spherical descent refinement stops at this direction change
inline constexpr double descent_step = 1e-10;

// subset enumeration refuses to expand more than this many subsets
inline constexpr long long subset_cap = 10'000'000;

}  // namespace isodiam::tol
