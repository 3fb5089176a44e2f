#include "isodiam/positions.hpp"

#include <cmath>

#include "isodiam/linalg.hpp"

namespace isodiam {

PositionCertificate::PositionCertificate(PositionKind kind, LinearMap map,
                                         double before, double after,
                                         IdentityDecomposition decomposition,
                                         double residual,
                                         double quotient_slack)
    : kind(kind),
      map(std::move(map)),
      quotient_before(before),
      quotient_after(after),
      decomposition(std::move(decomposition)),
      residual(residual) {
  if (kind == PositionKind::Behrend && after < before - quotient_slack) {
    throw Error("behrend certificate: quotient decreased");
  }
  if (kind == PositionKind::Isominwidth && after > before + quotient_slack) {
    throw Error("isominwidth certificate: quotient increased");
  }
}

NormalizationResult behrend_normalize(const Polytope& p, double eps) {
  const Polytope diff = difference_body(p).scaled(1.0 / p.diameter());
  MveeOptions opts;
  opts.eps = eps;
  MveeResult mv = mvee_centered(diff.vertices(), opts);
  LinearMap map = normalization_map(mv.ellipsoid);
  Polytope out = p.transformed(map);

  const auto dirs =
      diametrical_directions(out, tol::behrend_diametrical_rel)
          .antipodal_classes();
  FitResult fit = fit_weights(dirs, tol::behrend_fit);
  PositionCertificate cert(
      PositionKind::Behrend, map, iq(p), iq(out),
      IdentityDecomposition::make(dirs, fit.weights), fit.residual,
      1e-9 + 100.0 * eps);
  return {std::move(map), std::move(out), std::move(cert)};
}

BehrendCheck is_behrend(const Polytope& p, double tol) {
  const double rel =
      std::clamp(tol * 1e-2, tol::diametrical_rel, 0.01);
  const auto dirs = diametrical_directions(p, rel).antipodal_classes();
  FitResult fit = fit_weights(dirs, tol);
  BehrendCheck out;
  out.in_position = fit.feasible;
  out.achieved_residual = fit.residual;
  if (fit.feasible) {
    out.certificate.emplace(
        PositionKind::Behrend, LinearMap::identity(p.dim()), iq(p), iq(p),
        IdentityDecomposition::make(dirs, fit.weights), fit.residual);
  }
  return out;
}

AngleRange distribution_check(const Polytope& p,
                              const std::vector<Eigen::VectorXd>& basis) {
  if (!is_behrend(p, tol::behrend_fit).in_position) {
    throw NotInBehrendPosition("distribution_check: body is not certified");
  }
  const auto dirs =
      diametrical_directions(p, tol::behrend_diametrical_rel)
          .antipodal_classes();
  AngleRange r{M_PI, 0.0};
  for (const auto& u : dirs) {
    const double a = subspace_angle(basis, u);
    r.min_angle = std::min(r.min_angle, a);
    r.max_angle = std::max(r.max_angle, a);
  }
  const double pivot =
      std::acos(std::sqrt(static_cast<double>(basis.size()) / p.dim()));
  if (r.min_angle > pivot + 1e-6 || r.max_angle < pivot - 1e-6) {
    throw Error("distribution_check: angle bounds violated");
  }
  return r;
}

GreedyBound greedy_simplex_bound(const Polytope& p) {
  if (!is_behrend(p, tol::behrend_fit).in_position) {
    throw NotInBehrendPosition("greedy_simplex_bound: body is not certified");
  }
  const int n = p.dim();
  const auto dirs =
      diametrical_directions(p, tol::behrend_diametrical_rel).directions();

  std::vector<Eigen::VectorXd> chosen = {dirs[0]};
  while (static_cast<int>(chosen.size()) < n) {
    double best = -1.0;
    const Eigen::VectorXd* pick = nullptr;
    for (const auto& u : dirs) {
      const double a = subspace_angle(chosen, u);
      if (a > best) {
        best = a;
        pick = &u;
      }
    }
    chosen.push_back(*pick);
  }

  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i) v.col(i) = chosen[i];
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  const double value = std::abs(v.determinant()) / nfact;

  const double floor = 1.0 / (std::sqrt(nfact) * std::pow(n, n / 2.0));
  if (value < floor - 1e-9) {
    throw Error("greedy_simplex_bound: below the dimensional constant");
  }
  if (iq(p) < value - 1e-9) {
    throw Error("greedy_simplex_bound: iq fell below the simplex bound");
  }
  return {value, std::move(chosen)};
}

NormalizationResult isominwidth_normalize(const Polytope& p, double eps) {
  const double w = min_width(p).value;
  const Polytope diff = difference_body(p).scaled(1.0 / w);
  MveeOptions opts;
  opts.eps = eps;
  Ellipsoid john = john_ellipsoid_symmetric(diff, opts);
  LinearMap map = normalization_map(john);
  Polytope out = p.transformed(map);

  const auto dirs = min_width(out).directions.antipodal_classes();
  FitResult fit = fit_weights(dirs, tol::isominwidth_fit);
  const double q_after = iwq(out);
  if (q_after > 1.0 + 1e-6) {
    throw Error("isominwidth_normalize: iwq stayed above 1");
  }
  PositionCertificate cert(
      PositionKind::Isominwidth, map, iwq(p), q_after,
      IdentityDecomposition::make(dirs, fit.weights), fit.residual,
      1e-9 + 100.0 * eps);
  return {std::move(map), std::move(out), std::move(cert)};
}

double duality_check(const Polytope& p) {
  if (!p.is_origin_symmetric()) {
    throw NotSymmetric("duality_check: body is not o-symmetric");
  }
  const double r = min_width(p).value * polar(p).diameter();
  if (std::abs(r - 4.0) > 1e-5) {
    throw Error("duality_check: w(K) D(K*) strayed from 4: " +
                std::to_string(r));
  }
  return r;
}

double uniqueness_check(const Polytope& p,
                        const std::vector<std::uint64_t>& seeds,
                        PositionKind kind) {
  const int n = p.dim();
  auto normalize = [&](const Polytope& body) {
    return kind == PositionKind::Behrend ? behrend_normalize(body)
                                         : isominwidth_normalize(body);
  };
  const LinearMap base = normalize(p).map;
  const LinearMap base_inv = base.inverse();

  double worst = 0.0;
  for (std::uint64_t s : seeds) {
    Eigen::MatrixXd q;
    if (s == 0) {
      q = Eigen::MatrixXd::Identity(n, n);
    } else {
      linalg::Rng rng(s);
      q = linalg::random_orthogonal(n, rng);
    }
    const LinearMap rot{q};
    const LinearMap mapped = normalize(p.transformed(rot)).map;
    const Eigen::MatrixXd composite =
        mapped.matrix() * q * base_inv.matrix();
    worst = std::max(worst, linalg::orthogonality_defect(composite));
  }
  return worst;
}

}  // namespace isodiam
