#include "isodiam/linalg.hpp"

#include <cmath>

#include "isodiam/errors.hpp"

namespace isodiam::linalg {

Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw Error("sqrtm_spd: eigendecomposition failed");
  }
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw RankDeficient("sqrtm_spd: matrix is not positive definite");
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

int affine_rank(const std::vector<Eigen::VectorXd>& pts, double tol) {
  if (pts.size() < 2) return 0;
  const int n = static_cast<int>(pts[0].size());
  Eigen::MatrixXd d(n, static_cast<int>(pts.size()) - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    d.col(static_cast<int>(i) - 1) = pts[i] - pts[0];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                double grad_tol) {
  const int m = static_cast<int>(a.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(m, false);
  std::vector<int> passive_idx;

  const double gtol = grad_tol * std::max(1.0, b.norm());
  const int outer_cap = 3 * std::max(m, 1) + 30;
  int iter = 0;

  auto solve_passive = [&](const std::vector<int>& idx) -> Eigen::VectorXd {
    Eigen::MatrixXd ap(a.rows(), static_cast<int>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<int>(k)) = a.col(idx[k]);
    return ap.colPivHouseholderQr().solve(b);
  };

  while (iter++ < outer_cap) {
    Eigen::VectorXd w = a.transpose() * (b - a * x);
    int best = -1;
    double best_w = gtol;
    for (int j = 0; j < m; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    passive_idx.push_back(best);

    // inner loop: retreat until the passive solution is nonnegative
    for (int guard = 0; guard <= m + 1; ++guard) {
      Eigen::VectorXd z = solve_passive(passive_idx);
      double alpha = 1.0;
      bool any_neg = false;
      for (std::size_t k = 0; k < passive_idx.size(); ++k) {
        if (z(static_cast<int>(k)) <= 0.0) {
          any_neg = true;
          const double xi = x(passive_idx[k]);
          const double zi = z(static_cast<int>(k));
          if (xi - zi > 0.0) alpha = std::min(alpha, xi / (xi - zi));
        }
      }
      if (!any_neg) {
        x.setZero();
        for (std::size_t k = 0; k < passive_idx.size(); ++k) {
          x(passive_idx[k]) = z(static_cast<int>(k));
        }
        break;
      }
      for (std::size_t k = 0; k < passive_idx.size(); ++k) {
        x(passive_idx[k]) += alpha * (z(static_cast<int>(k)) - x(passive_idx[k]));
      }
      // drop variables that hit zero
      std::vector<int> kept;
      for (int j : passive_idx) {
        if (x(j) > 1e-14) {
          kept.push_back(j);
        } else {
          x(j) = 0.0;
          passive[j] = false;
        }
      }
      passive_idx = kept;
      if (passive_idx.empty()) break;
    }
  }

  NnlsResult r;
  r.x = x;
  r.residual = (a * x - b).norm();
  r.iterations = iter;
  return r;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Eigen::VectorXd Rng::gaussian_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian();
  return v;
}

Eigen::MatrixXd Rng::gaussian_matrix(int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = gaussian();
  }
  return m;
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

double orthogonality_defect(const Eigen::MatrixXd& b) {
  const int n = static_cast<int>(b.cols());
  Eigen::MatrixXd btb = b.transpose() * b;
  const double c = btb.trace() / n;
  if (c <= 0.0) return std::numeric_limits<double>::infinity();
  return (btb - c * Eigen::MatrixXd::Identity(n, n)).norm() / c;
}

}  // namespace isodiam::linalg
