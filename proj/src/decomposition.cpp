#include "isodiam/decomposition.hpp"

#include <cmath>

#include "isodiam/linalg.hpp"

namespace isodiam {

namespace {

Eigen::MatrixXd weighted_sum(const std::vector<Eigen::VectorXd>& dirs,
                             const Eigen::VectorXd& w) {
  const int n = static_cast<int>(dirs[0].size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    s += w(static_cast<int>(i)) * dirs[i] * dirs[i].transpose();
  }
  return s;
}

// visit all k-subsets of {0..m-1} in lexicographic order
template <typename F>
void for_each_subset(int m, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return std::round(r);
}

IdentityDecomposition IdentityDecomposition::make(
    std::vector<Eigen::VectorXd> directions, Eigen::VectorXd weights) {
  if (directions.empty() ||
      static_cast<int>(directions.size()) != weights.size()) {
    throw ShapeMismatch("IdentityDecomposition: directions/weights mismatch");
  }
  IdentityDecomposition d;
  d.dim = static_cast<int>(directions[0].size());
  for (auto& u : directions) {
    if (u.size() != d.dim) throw ShapeMismatch("IdentityDecomposition: dim");
    const double nrm = u.norm();
    if (nrm == 0.0) throw ParamOutOfRange("IdentityDecomposition: zero dir");
    u /= nrm;
  }
  if (weights.minCoeff() < 0.0) {
    throw ParamOutOfRange("IdentityDecomposition: negative weight");
  }
  d.directions = std::move(directions);
  d.weights = std::move(weights);
  d.residual = (weighted_sum(d.directions, d.weights) -
                Eigen::MatrixXd::Identity(d.dim, d.dim))
                   .norm();
  return d;
}

VerifyReport verify(const std::vector<Eigen::VectorXd>& dirs,
                    const Eigen::VectorXd& weights, double tol) {
  if (dirs.empty() || static_cast<int>(dirs.size()) != weights.size()) {
    throw ShapeMismatch("verify: directions/weights length mismatch");
  }
  const int n = static_cast<int>(dirs[0].size());
  for (const auto& u : dirs) {
    if (u.size() != n) throw ShapeMismatch("verify: mixed dimensions");
  }
  if (weights.minCoeff() < 0.0) {
    throw ParamOutOfRange("verify: negative weight");
  }
  std::vector<Eigen::VectorXd> unit = dirs;
  for (auto& u : unit) u.normalize();
  VerifyReport r;
  r.frobenius_residual =
      (weighted_sum(unit, weights) - Eigen::MatrixXd::Identity(n, n)).norm();
  r.trace_deviation = std::abs(weights.sum() - n);
  r.pass = r.frobenius_residual <= tol;
  return r;
}

FitResult fit_weights(const std::vector<Eigen::VectorXd>& dirs, double tol) {
  if (dirs.empty()) throw ShapeMismatch("fit_weights: no directions");
  const int n = static_cast<int>(dirs[0].size());
  const int m = static_cast<int>(dirs.size());
  const int rows = n * (n + 1) / 2;
  const double rt2 = std::sqrt(2.0);

  Eigen::MatrixXd a(rows, m);
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd u = dirs[j].normalized();
    int k = 0;
    for (int r = 0; r < n; ++r) {
      a(k++, j) = u(r) * u(r);
      for (int c = r + 1; c < n; ++c) a(k++, j) = rt2 * u(r) * u(c);
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  {
    int k = 0;
    for (int r = 0; r < n; ++r) {
      b(k) = 1.0;
      k += n - r;
    }
  }
  const auto fit = linalg::nnls(a, b);
  FitResult out;
  out.weights = fit.x;
  out.residual = fit.residual;
  out.feasible = fit.residual <= tol;
  return out;
}

CauchyBinetReport cauchy_binet_check(const IdentityDecomposition& d, int i) {
  const int n = d.dim;
  const int m = static_cast<int>(d.directions.size());
  if (i < 1 || i > n) throw InvalidQuery("cauchy_binet_check: need 1 <= i <= n");
  if (binomial(m, i) > static_cast<double>(tol::subset_cap)) {
    throw CombinatorialBlowup("cauchy_binet_check: too many subsets");
  }

  double rhs = 0.0;
  Eigen::MatrixXd u(n, i);
  for_each_subset(m, i, [&](const std::vector<int>& idx) {
    double lw = 1.0;
    for (int k = 0; k < i; ++k) {
      u.col(k) = d.directions[idx[k]];
      lw *= d.weights(idx[k]);
    }
    if (lw == 0.0) return;
    rhs += lw * (u.transpose() * u).determinant();
  });

  CauchyBinetReport r;
  r.lhs = binomial(n, i);
  r.rhs = rhs;
  r.gap = r.lhs - r.rhs;
  return r;
}

double gram_simplex_volume(const Eigen::MatrixXd& u) {
  const int j = static_cast<int>(u.cols());
  if (j < 1 || j > u.rows()) {
    throw ShapeMismatch("gram_simplex_volume: need 1 <= j <= n columns");
  }
  const double g = (u.transpose() * u).determinant();
  double jfact = 1.0;
  for (int k = 2; k <= j; ++k) jfact *= k;
  return std::sqrt(std::max(0.0, g)) / jfact;
}

SigmaBound sigma_bound_check(const Eigen::VectorXd& weights, int d) {
  const int m = static_cast<int>(weights.size());
  if (d < 0 || d > m) throw InvalidQuery("sigma_bound_check: need 0 <= d <= m");
  if (weights.size() > 0 && weights.minCoeff() < 0.0) {
    throw ParamOutOfRange("sigma_bound_check: negative weight");
  }

  // Newton's identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
  std::vector<double> p(d + 1, 0.0), e(d + 1, 0.0);
  e[0] = 1.0;
  for (int i = 1; i <= d; ++i) {
    for (int k = 0; k < m; ++k) p[i] += std::pow(weights(k), i);
  }
  for (int k = 1; k <= d; ++k) {
    double acc = 0.0;
    double sign = 1.0;
    for (int i = 1; i <= k; ++i) {
      acc += sign * e[k - i] * p[i];
      sign = -sign;
    }
    e[k] = acc / k;
  }

  const double c = weights.sum();
  SigmaBound out;
  out.sigma = e[d];
  out.bound = binomial(m, d) * std::pow(c / m, d);
  out.within = out.sigma <= out.bound + 1e-9 * std::max(1.0, out.bound);
  return out;
}

}  // namespace isodiam
