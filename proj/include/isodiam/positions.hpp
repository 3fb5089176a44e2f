#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isodiam/decomposition.hpp"
#include "isodiam/ellipsoid.hpp"
#include "isodiam/polytope.hpp"

namespace isodiam {

enum class PositionKind { Behrend, Isominwidth };

// Evidence that a body sits in an optimal position: the map that was
// applied, the quotient before/after, and a decomposition of the identity
// over the extremal directions of the transformed body.
struct PositionCertificate {
  PositionKind kind;
  LinearMap map;
  double quotient_before;
  double quotient_after;
  IdentityDecomposition decomposition;
  double residual;

  // Validates quotient monotonicity for the kind at construction. The
  // slack absorbs the ellipsoid solver's accuracy: a body that already
  // sits at the optimum can lose O(eps) under the near-identity map.
  PositionCertificate(PositionKind kind, LinearMap map, double before,
                      double after, IdentityDecomposition decomposition,
                      double residual, double quotient_slack = 1e-9);
};

struct NormalizationResult {
  LinearMap map;
  Polytope body;
  PositionCertificate certificate;
};

// Isodiametric normalization: map the scaled difference body onto its
// minimal enclosing ellipsoid's unit ball. The output body maximizes the
// isodiametric quotient among linear images (up to solver accuracy).
NormalizationResult behrend_normalize(const Polytope& p,
                                      double eps = tol::mvee_eps);

struct BehrendCheck {
  bool in_position;
  std::optional<PositionCertificate> certificate;  // on success
  double achieved_residual;                        // NNLS optimum either way
};

// do the diametrical directions admit a decomposition of the identity?
BehrendCheck is_behrend(const Polytope& p, double tol = tol::behrend_fit);

struct AngleRange {
  double min_angle;
  double max_angle;
};

// extremal angles between span(basis) and the diametrical directions;
// enforces the distribution bounds around arccos(sqrt(i/n))
AngleRange distribution_check(const Polytope& p,
                              const std::vector<Eigen::VectorXd>& basis);

struct GreedyBound {
  double value;  // |det(v_1..v_n)| / n!
  std::vector<Eigen::VectorXd> directions;
};

// greedy angle-maximizing selection of diametrical directions; the spanned
// simplex volume lower-bounds iq and the dimensional constant
GreedyBound greedy_simplex_bound(const Polytope& p);

// Minimum-width normalization via the John ellipsoid of the scaled
// difference body; output satisfies iwq <= 1 (+ tolerance).
NormalizationResult isominwidth_normalize(const Polytope& p,
                                          double eps = tol::mvee_eps);

// w(P) * D(polar(P)) for o-symmetric P; must come out as 4
double duality_check(const Polytope& p);

// Re-normalizes random orthogonal images and measures how far the
// composite maps are from orthogonal-times-scalar. Seed 0 stands for the
// identity rotation.
double uniqueness_check(const Polytope& p, const std::vector<std::uint64_t>& seeds,
                        PositionKind kind = PositionKind::Behrend);

}  // namespace isodiam
