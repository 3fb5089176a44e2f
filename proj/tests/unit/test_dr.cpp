#include <doctest.h>

#include <cmath>

#include "isodiam/dr.hpp"
#include "isodiam/linalg.hpp"

using namespace isodiam;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("lower bound closed forms") {
  for (int n = 1; n <= 6; ++n) {
    for (int j = 1; j <= n; ++j) {
      CHECK(dr_lower_bound(n, n, j) ==
            doctest::Approx(1.0 / factorial(j)).epsilon(1e-13));
    }
  }
  CHECK(dr_lower_bound(6, 3, 3) ==
        doctest::Approx(std::sqrt(10.0) / 30.0).epsilon(1e-13));
  CHECK(dr_lower_bound(4, 3, 2) ==
        doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-13));
}

TEST_CASE("queries clamp beyond binom(n+1,2)") {
  const auto q = DRQuery::make(100, 3, 3);
  CHECK(q.clamped);
  CHECK(q.m == 6);
  CHECK(dr_lower_bound(q) == doctest::Approx(dr_lower_bound(6, 3, 3)));
  CHECK_THROWS_AS(DRQuery::make(2, 3, 1), InvalidQuery);
  CHECK_THROWS_AS(DRQuery::make(5, 3, 4), InvalidQuery);
}

TEST_CASE("simplex values") {
  CHECK(dr_simplex_value(2, 2) ==
        doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-13));
  CHECK(dr_simplex_value(3, 3) ==
        doctest::Approx(2.0 / (9.0 * std::sqrt(3.0))).epsilon(1e-13));
  for (int n = 1; n <= 6; ++n) {
    CHECK(dr_simplex_value(n, 1) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("max simplex volume over witness subsets") {
  const DRWitness cross = witness_library("crosspolytope 4");
  CHECK(cross.value == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  CHECK(cross.subset == std::vector<int>{0, 1, 2, 3});

  const DRWitness dr533 = witness_library("dr533");
  CHECK(dr533.value == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(dr533.subset == std::vector<int>{0, 1, 3});
  CHECK(dr533.decomposition.weights(0) == doctest::Approx(1.0 / 3.0));
  CHECK(dr533.decomposition.weights(1) == doctest::Approx(2.0 / 3.0));

  // every pair of simplex directions spans the same area
  const DRWitness s3 = witness_library("regular_simplex 3");
  const auto pairs = max_simplex_volume(s3.decomposition, 2);
  CHECK(pairs.value == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
  CHECK(pairs.subset == std::vector<int>{0, 1});
}

TEST_CASE("subset enumeration refuses to blow up") {
  linalg::Rng rng(3);
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < 40; ++i) dirs.push_back(rng.gaussian_vector(20).normalized());
  const auto d = IdentityDecomposition::make(dirs, Eigen::VectorXd::Ones(40));
  CHECK_THROWS_AS(max_simplex_volume(d, 20), CombinatorialBlowup);
  CHECK_THROWS_AS(cauchy_binet_check(d, 20), CombinatorialBlowup);
}

TEST_CASE("witness residuals and the lower-bound consistency") {
  for (const std::string name :
       {"crosspolytope 2", "crosspolytope 3", "crosspolytope 4",
        "regular_simplex 2", "regular_simplex 3", "regular_simplex 4",
        "dr533", "icosahedron_lines"}) {
    const DRWitness w = witness_library(name);
    CHECK(w.decomposition.residual < 1e-10);
    const int n = w.decomposition.dim;
    const int m = static_cast<int>(w.decomposition.directions.size());
    // witnesses are feasible points: the guaranteed value cannot exceed them
    CHECK(dr_lower_bound(DRQuery::make(m, n, n)) <= w.value + 1e-12);
  }
  CHECK_THROWS_AS(witness_library("moebius"), UnknownWitness);
}

TEST_CASE("sharpness at (n,n,j) and (n+1,n,j)") {
  for (int n = 2; n <= 4; ++n) {
    const DRWitness cross = witness_library("crosspolytope " + std::to_string(n));
    for (int j = 1; j <= n; ++j) {
      CHECK(max_simplex_volume(cross.decomposition, j).value ==
            doctest::Approx(dr_lower_bound(n, n, j)).epsilon(1e-12));
    }
    const DRWitness simplex =
        witness_library("regular_simplex " + std::to_string(n));
    for (int j = 1; j <= n; ++j) {
      CHECK(max_simplex_volume(simplex.decomposition, j).value ==
            doctest::Approx(dr_lower_bound(n + 1, n, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("equiangular line systems") {
  const DRWitness ico = witness_library("icosahedron_lines");
  const auto r = equiangular_check(ico.decomposition.directions);
  CHECK(r.equiangular);
  CHECK(r.common_cos == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(r.target == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  for (int i = 0; i < ico.decomposition.weights.size(); ++i) {
    CHECK(ico.decomposition.weights(i) == doctest::Approx(0.5).epsilon(1e-10));
  }

  std::vector<Eigen::VectorXd> tri;
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd u(2);
    u << std::cos(2.0 * M_PI * k / 3.0), std::sin(2.0 * M_PI * k / 3.0);
    tri.push_back(u);
  }
  const auto t = equiangular_check(tri);
  CHECK(t.equiangular);
  CHECK(t.common_cos == doctest::Approx(0.5).epsilon(1e-12));

  Eigen::VectorXd e1(2), e2(2), mid(2);
  e1 << 1, 0;
  e2 << 0, 1;
  mid << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(!equiangular_check({e1, e2, mid}).equiangular);
}

TEST_CASE("search at m = n is forced to the orthonormal value") {
  DrSearchOptions opts;
  opts.seed = 9;
  opts.restarts = 4;
  opts.iters = 300;
  const DRWitness w = dr_search(3, 3, opts);
  CHECK(w.value == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(w.decomposition.residual < 1e-12);
}

TEST_CASE("search reproduces the reported DR(5,3,3) value") {
  DrSearchOptions opts;
  opts.seed = 1;
  opts.restarts = 64;
  opts.iters = 5000;
  const DRWitness w = dr_search(5, 3, opts);
  CHECK(w.value <= 0.1251);
  CHECK(w.value >= 0.1249);
  CHECK(w.decomposition.residual < 1e-8);
  CHECK(std::abs(w.decomposition.weights.sum() - 3.0) < 1e-8);
}

TEST_CASE("search is deterministic and thread-count independent") {
  DrSearchOptions a;
  a.seed = 4;
  a.restarts = 8;
  a.iters = 400;
  DrSearchOptions b = a;
  b.threads = 4;
  const DRWitness wa = dr_search(5, 3, a);
  const DRWitness wb = dr_search(5, 3, b);
  CHECK(wa.value == doctest::Approx(wb.value).epsilon(1e-15));
  REQUIRE(wa.decomposition.directions.size() ==
          wb.decomposition.directions.size());
  for (std::size_t i = 0; i < wa.decomposition.directions.size(); ++i) {
    CHECK((wa.decomposition.directions[i] - wb.decomposition.directions[i])
              .norm() < 1e-15);
  }
}

TEST_CASE("search values are non-increasing in m") {
  DrSearchOptions opts;
  opts.seed = 2;
  opts.restarts = 16;
  opts.iters = 1500;
  double prev = 1e9;
  for (int m = 3; m <= 6; ++m) {
    const DRWitness w = dr_search(m, 3, opts);
    CHECK(w.value <= prev + 1e-3);
    prev = w.value;
  }
}
