#include "isodiam/ellipsoid.hpp"

#include <cmath>
#include <limits>

#include "isodiam/linalg.hpp"

namespace isodiam {

// ---------------------------------------------------------------- Ellipsoid

Ellipsoid::Ellipsoid(Eigen::MatrixXd shape, Eigen::VectorXd center)
    : shape_(std::move(shape)), center_(std::move(center)) {
  if (shape_.rows() != shape_.cols() || shape_.rows() != center_.size()) {
    throw ShapeMismatch("Ellipsoid: shape/center dimensions disagree");
  }
  if ((shape_ - shape_.transpose()).norm() > 1e-12 * (1.0 + shape_.norm())) {
    throw ShapeMismatch("Ellipsoid: shape matrix is not symmetric");
  }
  shape_ = 0.5 * (shape_ + shape_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape_);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw RankDeficient("Ellipsoid: shape matrix is not positive definite");
  }
}

double unit_ball_volume(int n) {
  return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double Ellipsoid::volume() const {
  return unit_ball_volume(dim()) / std::sqrt(shape_.determinant());
}

bool Ellipsoid::contains(const Eigen::VectorXd& x, double slack) const {
  const Eigen::VectorXd d = x - center_;
  return d.dot(shape_ * d) <= (1.0 + slack) * (1.0 + slack);
}

// ------------------------------------------------------------- dual solver

namespace {

struct DualSolution {
  Eigen::VectorXd lambda;
  long iterations;
  double gap;
  std::vector<double> trace;
};

// maximize log det(sum_i l_i q_i q_i') over the simplex; optimality is
// w_i := q_i' M^{-1} q_i <= d with equality on the support
DualSolution ascend(const Eigen::MatrixXd& q, const MveeOptions& opts) {
  const int d = static_cast<int>(q.rows());
  const int m = static_cast<int>(q.cols());

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(m, 1.0 / m);
  if (opts.warm_start.size() == m && opts.warm_start.minCoeff() >= 0.0 &&
      opts.warm_start.sum() > 0.0) {
    // keep a floor on every coordinate so dropped points can re-enter
    lambda = opts.warm_start / opts.warm_start.sum();
    lambda = (lambda.array() + 1e-12).matrix();
    lambda /= lambda.sum();
  }
  Eigen::MatrixXd mat = q * lambda.asDiagonal() * q.transpose();

  Eigen::LLT<Eigen::MatrixXd> llt(mat);
  if (llt.info() != Eigen::Success) {
    throw RankDeficient("mvee: points do not span the space");
  }

  DualSolution out;
  out.gap = std::numeric_limits<double>::infinity();
  long it = 0;
  for (; it < opts.max_iterations; ++it) {
    llt.compute(mat);
    if (llt.info() != Eigen::Success) {
      throw RankDeficient("mvee: dual iterate lost rank");
    }
    if (opts.record_objective) {
      double logdet = 0.0;
      for (int i = 0; i < d; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
      out.trace.push_back(logdet);
    }

    const Eigen::MatrixXd sol = llt.solve(q);
    int i_max = 0, i_min = -1;
    double w_max = -1.0, w_min = std::numeric_limits<double>::infinity();
    Eigen::VectorXd w(m);
    for (int i = 0; i < m; ++i) {
      w(i) = q.col(i).dot(sol.col(i));
      if (w(i) > w_max) {
        w_max = w(i);
        i_max = i;
      }
      if (lambda(i) > 1e-15 && w(i) < w_min) {
        w_min = w(i);
        i_min = i;
      }
    }

    const double err_up = w_max / d - 1.0;
    const double err_dn = (i_min >= 0) ? 1.0 - w_min / d : 0.0;
    out.gap = std::max(err_up, err_dn);
    if (out.gap <= opts.eps) break;

    int j;
    double beta;
    if (err_up >= err_dn) {
      j = i_max;
      beta = (w(j) - d) / (d * (w(j) - 1.0));
    } else {
      j = i_min;
      const double denom = d * (w(j) - 1.0);
      const double lo = -lambda(j) / (1.0 - lambda(j));
      if (std::abs(denom) < 1e-300) {
        beta = lo;
      } else {
        const double unconstrained = (w(j) - d) / denom;
        beta = (unconstrained < 0.0) ? std::max(unconstrained, lo) : lo;
      }
    }
    lambda *= (1.0 - beta);
    lambda(j) += beta;
    if (lambda(j) < 0.0) lambda(j) = 0.0;
    if ((it & 4095) == 4095) {
      // rebuild from the weights so rank-one drift cannot accumulate
      mat = q * lambda.asDiagonal() * q.transpose();
    } else {
      mat = (1.0 - beta) * mat + beta * (q.col(j) * q.col(j).transpose());
    }
  }

  if (out.gap > opts.eps) {
    throw MaxIterations("mvee: iteration cap reached, gap " +
                            std::to_string(out.gap),
                        out.gap);
  }
  out.lambda = lambda;
  out.iterations = it;
  return out;
}

Eigen::VectorXd svec(const Eigen::MatrixXd& s) {
  const int n = static_cast<int>(s.rows());
  Eigen::VectorXd v(n * (n + 1) / 2);
  int k = 0;
  const double rt2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    v(k++) = s(i, i);
    for (int j = i + 1; j < n; ++j) v(k++) = rt2 * s(i, j);
  }
  return v;
}

// weights for sum w_i u_i u_i' ~ I (optionally also sum w_i u_i ~ 0),
// nonnegative least squares on the vectorized system
Eigen::VectorXd fit_contact_weights(const std::vector<Eigen::VectorXd>& us,
                                    bool barycenter_rows) {
  const int n = static_cast<int>(us[0].size());
  const int m = static_cast<int>(us.size());
  const int sym_rows = n * (n + 1) / 2;
  const int rows = sym_rows + (barycenter_rows ? n : 0);
  Eigen::MatrixXd a(rows, m);
  for (int j = 0; j < m; ++j) {
    a.col(j).head(sym_rows) = svec(us[j] * us[j].transpose());
    if (barycenter_rows) a.col(j).tail(n) = us[j];
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  b.head(sym_rows) = svec(Eigen::MatrixXd::Identity(n, n));
  return linalg::nnls(a, b).x;
}

ContactData build_contact(const std::vector<Eigen::VectorXd>& raw_contacts,
                          const Eigen::VectorXd& solver_weights,
                          bool general_case) {
  const int n = static_cast<int>(raw_contacts[0].size());
  std::vector<Eigen::VectorXd> us;
  us.reserve(raw_contacts.size());
  for (const auto& p : raw_contacts) us.push_back(p.normalized());

  Eigen::VectorXd w = fit_contact_weights(us, general_case);

  // fall back to the rescaled solver weights if the re-fit is worse
  auto residual_of = [&](const Eigen::VectorXd& wt) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < us.size(); ++i) {
      s += wt(static_cast<int>(i)) * us[i] * us[i].transpose();
    }
    return (s - Eigen::MatrixXd::Identity(n, n)).norm();
  };
  if (residual_of(w) > residual_of(solver_weights)) w = solver_weights;

  ContactData c;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (w(static_cast<int>(i)) > tol::weight_prune) {
      c.points.push_back(us[i]);
    }
  }
  c.weights.resize(static_cast<int>(c.points.size()));
  int k = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (w(static_cast<int>(i)) > tol::weight_prune) c.weights(k++) = w(static_cast<int>(i));
  }

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd bc = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    s += c.weights(static_cast<int>(i)) * c.points[i] * c.points[i].transpose();
    bc += c.weights(static_cast<int>(i)) * c.points[i];
  }
  c.residual = (s - Eigen::MatrixXd::Identity(n, n)).norm();
  c.barycenter_residual = general_case ? bc.norm() : 0.0;
  return c;
}

}  // namespace

// ------------------------------------------------------------ entry points

MveeResult mvee_centered(const std::vector<Eigen::VectorXd>& points,
                         const MveeOptions& opts) {
  if (points.empty()) throw RankDeficient("mvee_centered: no points");
  const int n = static_cast<int>(points[0].size());
  if (!(opts.eps > 0.0 && opts.eps <= 1e-3)) {
    throw ParamOutOfRange("mvee_centered: eps must be in (0, 1e-3]");
  }

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  const double t = 1e-9 * std::max(1.0, scale);

  // pair up antipodes; every point must have its negation in the set
  std::vector<Eigen::VectorXd> classes;
  for (const auto& p : points) {
    bool has_neg = false;
    for (const auto& q : points) {
      if ((p + q).norm() <= t) {
        has_neg = true;
        break;
      }
    }
    if (!has_neg) {
      throw NotSymmetric("mvee_centered: point set is not symmetric");
    }
    bool seen = false;
    for (const auto& c : classes) {
      if ((p - c).norm() <= t || (p + c).norm() <= t) {
        seen = true;
        break;
      }
    }
    if (!seen) classes.push_back(p);
  }

  Eigen::MatrixXd q(n, static_cast<int>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i) q.col(static_cast<int>(i)) = classes[i];

  DualSolution dual = ascend(q, opts);

  Eigen::MatrixXd moment = q * dual.lambda.asDiagonal() * q.transpose();
  Eigen::MatrixXd shape = (static_cast<double>(n) * moment).inverse();
  shape = 0.5 * (shape + shape.transpose());
  Ellipsoid e(shape, Eigen::VectorXd::Zero(n));

  const double contact_cut = 1.0 - tol::contact_factor * opts.eps;
  Eigen::MatrixXd a = linalg::sqrtm_spd(shape);
  std::vector<Eigen::VectorXd> raw;
  std::vector<double> wts;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const double mv = classes[i].dot(shape * classes[i]);
    if (mv >= contact_cut) {
      raw.push_back(a * classes[i]);
      wts.push_back(n * dual.lambda(static_cast<int>(i)));
    }
  }
  Eigen::VectorXd sw = Eigen::Map<Eigen::VectorXd>(wts.data(), static_cast<int>(wts.size()));
  ContactData contact = build_contact(raw, sw, /*general_case=*/false);

  return {std::move(e), std::move(contact), dual.iterations, dual.gap,
          std::move(dual.trace)};
}

MveeResult mvee_general(const std::vector<Eigen::VectorXd>& points,
                        const MveeOptions& opts) {
  if (points.empty()) throw RankDeficient("mvee_general: no points");
  const int n = static_cast<int>(points[0].size());
  if (!(opts.eps > 0.0 && opts.eps <= 1e-3)) {
    throw ParamOutOfRange("mvee_general: eps must be in (0, 1e-3]");
  }

  Eigen::MatrixXd q(n + 1, static_cast<int>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    q.col(static_cast<int>(i)).head(n) = points[i];
    q(n, static_cast<int>(i)) = 1.0;
  }

  DualSolution dual = ascend(q, opts);

  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    center += dual.lambda(static_cast<int>(i)) * points[i];
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::VectorXd d = points[i] - center;
    x += dual.lambda(static_cast<int>(i)) * d * d.transpose();
  }
  Eigen::MatrixXd shape = (static_cast<double>(n) * x).inverse();
  shape = 0.5 * (shape + shape.transpose());
  Ellipsoid e(shape, center);

  const double contact_cut = 1.0 - tol::contact_factor * opts.eps;
  Eigen::MatrixXd a = linalg::sqrtm_spd(shape);
  std::vector<Eigen::VectorXd> raw;
  std::vector<double> wts;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::VectorXd d = points[i] - center;
    if (d.dot(shape * d) >= contact_cut) {
      raw.push_back(a * d);
      wts.push_back(n * dual.lambda(static_cast<int>(i)));
    }
  }
  Eigen::VectorXd sw = Eigen::Map<Eigen::VectorXd>(wts.data(), static_cast<int>(wts.size()));
  ContactData contact = build_contact(raw, sw, /*general_case=*/true);

  return {std::move(e), std::move(contact), dual.iterations, dual.gap,
          std::move(dual.trace)};
}

LoewnerCheck is_loewner(const Polytope& p, double tol) {
  if (p.max_vertex_norm() > 1.0 + tol) {
    throw NotContainedInBall("is_loewner: body is not inside the unit ball");
  }
  MveeResult r = mvee_general(p.vertices());
  const int n = p.dim();
  const bool ok =
      (r.ellipsoid.shape() - Eigen::MatrixXd::Identity(n, n)).norm() <= tol &&
      r.ellipsoid.center().norm() <= tol;
  LoewnerCheck out;
  out.in_position = ok;
  if (ok) {
    out.contact = std::move(r.contact);
  } else {
    out.offending = std::move(r.ellipsoid);
  }
  return out;
}

Ellipsoid john_ellipsoid_symmetric(const Polytope& p,
                                   const MveeOptions& opts) {
  if (!p.is_origin_symmetric()) {
    throw NotSymmetric("john_ellipsoid_symmetric: body is not o-symmetric");
  }
  const Polytope dual = polar(p);
  MveeResult r = mvee_centered(dual.vertices(), opts);
  Eigen::MatrixXd shape = r.ellipsoid.shape().inverse();
  return Ellipsoid(0.5 * (shape + shape.transpose()),
                   Eigen::VectorXd::Zero(p.dim()));
}

LinearMap normalization_map(const Ellipsoid& e) {
  if (e.center().norm() > 1e-12) {
    throw ParamOutOfRange("normalization_map: ellipsoid is not centered");
  }
  return LinearMap(linalg::sqrtm_spd(e.shape()));
}

}  // namespace isodiam
