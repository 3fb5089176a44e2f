#include "isodiam/dr.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "isodiam/bodies.hpp"
#include "isodiam/linalg.hpp"

namespace isodiam {

DRQuery DRQuery::make(int m, int n, int j) {
  if (n < 1 || j < 1 || j > n || m < n) {
    throw InvalidQuery("DR query needs 1 <= j <= n <= m");
  }
  DRQuery q{m, n, j, false};
  const int cap = n * (n + 1) / 2;
  if (m > cap) {
    q.m = cap;
    q.clamped = true;
  }
  return q;
}

double dr_lower_bound(const DRQuery& q) {
  auto lbinom = [](double a, double b) {
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
           std::lgamma(a - b + 1.0);
  };
  const double log_sq = lbinom(q.n, q.j) + q.j * std::log(static_cast<double>(q.m) / q.n) -
                        lbinom(q.m, q.j) - 2.0 * std::lgamma(q.j + 1.0);
  return std::exp(0.5 * log_sq);
}

double dr_lower_bound(int m, int n, int j) {
  return dr_lower_bound(DRQuery::make(m, n, j));
}

double dr_simplex_value(int n, int j) {
  if (j < 1 || j > n) throw InvalidQuery("dr_simplex_value: need 1 <= j <= n");
  double jfact = 1.0;
  for (int k = 2; k <= j; ++k) jfact *= k;
  const double sq = (n - j + 1) * std::pow(n + 1.0, j - 1) /
                    (std::pow(static_cast<double>(n), j) * jfact * jfact);
  const double v = std::sqrt(sq);
  const double bound = dr_lower_bound(n + 1, n, j);
  if (std::abs(v - bound) > 1e-12 * std::max(1.0, v)) {
    throw Error("dr_simplex_value: closed form disagrees with the bound");
  }
  return v;
}

MaxSimplex max_simplex_volume(const IdentityDecomposition& d, int j) {
  const int n = d.dim;
  const int m = static_cast<int>(d.directions.size());
  if (j < 1 || j > n) throw InvalidQuery("max_simplex_volume: need 1 <= j <= n");
  if (binomial(m, j) > static_cast<double>(tol::subset_cap)) {
    throw CombinatorialBlowup("max_simplex_volume: too many subsets");
  }

  MaxSimplex best{-1.0, {}};
  std::vector<int> idx(j);
  for (int i = 0; i < j; ++i) idx[i] = i;
  Eigen::MatrixXd u(n, j);
  while (true) {
    for (int k = 0; k < j; ++k) u.col(k) = d.directions[idx[k]];
    const double v = gram_simplex_volume(u);
    // ties (up to rounding) keep the earlier, lexicographically smaller set
    if (v > best.value * (1.0 + 1e-12) + 1e-300) {
      best.value = v;
      best.subset = idx;
    }
    int pos = j - 1;
    while (pos >= 0 && idx[pos] == m - j + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < j; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

// ---------------------------------------------------------------- search

namespace {

// rows of w become orthonormal: w <- (ww')^{-1/2} w
bool project_rows(Eigen::MatrixXd& w) {
  Eigen::MatrixXd gram = w * w.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.eigenvalues().minCoeff() < 1e-12) return false;
  Eigen::MatrixXd inv_sqrt = es.eigenvectors() *
                             es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                             es.eigenvectors().transpose();
  w = inv_sqrt * w;
  return true;
}

struct Candidate {
  std::vector<Eigen::VectorXd> dirs;
  Eigen::VectorXd weights;
};

Candidate split_columns(const Eigen::MatrixXd& w) {
  Candidate c;
  std::vector<double> wts;
  for (int j = 0; j < w.cols(); ++j) {
    const double nrm = w.col(j).norm();
    if (nrm < 1e-10) continue;  // dropped column; still a valid witness
    c.dirs.push_back(w.col(j) / nrm);
    wts.push_back(nrm * nrm);
  }
  c.weights = Eigen::Map<Eigen::VectorXd>(wts.data(),
                                          static_cast<int>(wts.size()));
  return c;
}

double objective(const Eigen::MatrixXd& w, int n) {
  Candidate c = split_columns(w);
  if (static_cast<int>(c.dirs.size()) < n) return 1e9;
  Eigen::MatrixXd u(n, static_cast<int>(c.dirs.size()));
  for (std::size_t i = 0; i < c.dirs.size(); ++i) u.col(static_cast<int>(i)) = c.dirs[i];

  // max |det| over n-subsets of the columns
  const int m = static_cast<int>(c.dirs.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  Eigen::MatrixXd sub(n, n);
  double best = 0.0;
  while (true) {
    for (int k = 0; k < n; ++k) sub.col(k) = u.col(idx[k]);
    best = std::max(best, std::abs(sub.determinant()));
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == m - n + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  return best / nfact;
}

struct RestartResult {
  double value = 1e9;
  Eigen::MatrixXd w;
};

RestartResult run_restart(int m, int n, std::uint64_t seed, int iters) {
  linalg::Rng rng(seed);
  RestartResult best;

  Eigen::MatrixXd w;
  do {
    w = rng.gaussian_matrix(n, m);
  } while (!project_rows(w));
  double f = objective(w, n);
  best.value = f;
  best.w = w;

  const double sigma_hi = 0.3, sigma_lo = 1e-4;
  for (int t = 0; t < iters; ++t) {
    const double frac = iters > 1 ? static_cast<double>(t) / (iters - 1) : 1.0;
    const double sigma = sigma_hi * std::pow(sigma_lo / sigma_hi, frac);
    // last stretch runs cold: pure descent polish
    const double temp = frac < 0.9 ? 0.1 * sigma : 0.0;

    Eigen::MatrixXd prop = w + sigma * rng.gaussian_matrix(n, m);
    if (!project_rows(prop)) continue;
    const double fp = objective(prop, n);
    bool accept = fp <= f;
    if (!accept && temp > 0.0) {
      accept = rng.uniform() < std::exp(-(fp - f) / temp);
    }
    if (accept) {
      w = std::move(prop);
      f = fp;
      if (f < best.value) {
        best.value = f;
        best.w = w;
      }
    }
  }
  return best;
}

}  // namespace

DRWitness dr_search(int m, int n, const DrSearchOptions& opts) {
  if (n < 1 || m < n) throw InvalidQuery("dr_search: need m >= n >= 1");
  if (n > 4 || m > 10) {
    throw InvalidQuery("dr_search: desk scale only (n <= 4, m <= 10)");
  }

  std::vector<RestartResult> results(opts.restarts);
  auto work = [&](int first, int stride) {
    for (int r = first; r < opts.restarts; r += stride) {
      results[r] = run_restart(m, n, opts.seed ^ static_cast<std::uint64_t>(r),
                               opts.iters);
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }

  int pick = 0;
  for (int r = 1; r < opts.restarts; ++r) {
    if (results[r].value < results[pick].value) pick = r;
  }

  Candidate c = split_columns(results[pick].w);
  IdentityDecomposition d = IdentityDecomposition::make(c.dirs, c.weights);
  MaxSimplex ms = max_simplex_volume(d, n);
  return {std::move(d), ms.value, std::move(ms.subset)};
}

EquiangularReport equiangular_check(const std::vector<Eigen::VectorXd>& dirs) {
  if (dirs.size() < 2) {
    throw InvalidQuery("equiangular_check: need at least two directions");
  }
  const int n = static_cast<int>(dirs[0].size());
  double lo = 1.0, hi = 0.0, sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      const double c =
          std::abs(dirs[i].normalized().dot(dirs[j].normalized()));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      sum += c;
      ++count;
    }
  }
  EquiangularReport r;
  r.equiangular = (hi - lo) <= 1e-9;
  r.common_cos = sum / count;
  r.target = 1.0 / std::sqrt(n + 2.0);
  return r;
}

namespace {

DRWitness finish_witness(std::vector<Eigen::VectorXd> dirs,
                         Eigen::VectorXd weights) {
  IdentityDecomposition d =
      IdentityDecomposition::make(std::move(dirs), std::move(weights));
  if (d.residual > 1e-10) {
    throw Error("witness_library: stored decomposition failed verification");
  }
  MaxSimplex ms = max_simplex_volume(d, d.dim);
  return {std::move(d), ms.value, std::move(ms.subset)};
}

}  // namespace

DRWitness witness_library(const std::string& name) {
  auto starts_with = [&](const std::string& prefix) {
    return name.rfind(prefix, 0) == 0;
  };
  if (starts_with("crosspolytope ") || starts_with("crosspolytope_")) {
    const int n = std::stoi(name.substr(14));
    if (n < 1 || n > 8) throw UnknownWitness("crosspolytope dimension 1..8");
    std::vector<Eigen::VectorXd> dirs;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(i) = 1.0;
      dirs.push_back(e);
    }
    return finish_witness(std::move(dirs), Eigen::VectorXd::Ones(n));
  }
  if (starts_with("regular_simplex ") || starts_with("regular_simplex_")) {
    const int n = std::stoi(name.substr(16));
    if (n < 1 || n > 8) throw UnknownWitness("regular_simplex dimension 1..8");
    const Polytope s = make_regular_simplex(n);
    std::vector<Eigen::VectorXd> dirs(s.vertices().begin(),
                                      s.vertices().end());
    return finish_witness(
        std::move(dirs),
        Eigen::VectorXd::Constant(n + 1, static_cast<double>(n) / (n + 1)));
  }
  if (name == "dr533") {
    const double h = std::sqrt(3.0) / 2.0;
    std::vector<Eigen::VectorXd> dirs(5, Eigen::VectorXd(3));
    dirs[0] << 0, 0, 1;
    dirs[1] << h, 0, 0.5;
    dirs[2] << -h, 0, 0.5;
    dirs[3] << 0, h, -0.5;
    dirs[4] << 0, -h, -0.5;
    Eigen::VectorXd w(5);
    w << 1.0 / 3, 2.0 / 3, 2.0 / 3, 2.0 / 3, 2.0 / 3;
    return finish_witness(std::move(dirs), std::move(w));
  }
  if (name == "icosahedron_lines") {
    const Polytope ico = make_icosahedron();
    std::vector<Eigen::VectorXd> dirs;
    for (const auto& v : ico.vertices()) {
      bool seen = false;
      for (const auto& u : dirs) {
        if ((u + v).norm() < 1e-9) {
          seen = true;
          break;
        }
      }
      if (!seen) dirs.push_back(v);
    }
    return finish_witness(std::move(dirs),
                          Eigen::VectorXd::Constant(6, 0.5));
  }
  std::string known;
  for (const auto& w : witness_names()) known += " '" + w + "'";
  throw UnknownWitness("unknown witness: " + name + "; known:" + known);
}

std::vector<std::string> witness_names() {
  return {"crosspolytope <n>", "regular_simplex <n>", "dr533",
          "icosahedron_lines"};
}

}  // namespace isodiam
