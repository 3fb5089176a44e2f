#include <doctest.h>

#include <cmath>

#include "isodiam/acceptance.hpp"
#include "isodiam/bodies.hpp"
#include "isodiam/linalg.hpp"
#include "isodiam/positions.hpp"

using namespace isodiam;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Polytope stretch(const Polytope& p, std::initializer_list<double> diag) {
  Eigen::VectorXd d(static_cast<int>(diag.size()));
  int i = 0;
  for (double x : diag) d(i++) = x;
  return p.transformed(LinearMap(Eigen::MatrixXd(d.asDiagonal())));
}

}  // namespace

TEST_CASE("behrend normalization fixes the crosspolytope") {
  for (int n = 2; n <= 5; ++n) {
    const auto r = behrend_normalize(make_crosspolytope(n));
    CHECK(iq(r.body) == doctest::Approx(1.0 / factorial(n)).epsilon(1e-9));
    CHECK(linalg::orthogonality_defect(r.map.matrix()) < 1e-6);
    CHECK(r.certificate.residual <= tol::behrend_fit);
  }
}

TEST_CASE("stretched crosspolytope recovers the optimal quotient") {
  const Polytope squashed = stretch(make_crosspolytope(2), {2.0, 1.0});
  // brute values for the stretched body: rhombus with diagonals 4 and 2
  CHECK(squashed.volume() == doctest::Approx(4.0));
  CHECK(squashed.diameter() == doctest::Approx(4.0));
  CHECK(iq(squashed) == doctest::Approx(0.25));

  const auto r = behrend_normalize(squashed);
  CHECK(iq(r.body) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.certificate.quotient_before == doctest::Approx(0.25));
  CHECK(r.certificate.quotient_after == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("regular simplex hits the conjectured optimum") {
  const auto r = behrend_normalize(make_regular_simplex(3));
  CHECK(iq(r.body) ==
        doctest::Approx(1.0 / (6.0 * std::sqrt(2.0))).epsilon(1e-9));
}

TEST_CASE("is_behrend on the canonical bodies") {
  CHECK(is_behrend(make_cube(3)).in_position);
  CHECK(is_behrend(make_cube(5)).in_position);
  CHECK(is_behrend(make_crosspolytope(4)).in_position);
  CHECK(is_behrend(make_regular_simplex(3)).in_position);
  CHECK(is_behrend(make_icosahedron()).in_position);

  const auto boat = is_behrend(make_sailing_boat(0.95));
  CHECK(!boat.in_position);
  CHECK(boat.achieved_residual > 0.1);  // two skew direction classes only

  // at r = 1 the hull degenerates to a kite with a single diametrical class
  const auto kite = is_behrend(make_sailing_boat(1.0));
  CHECK(!kite.in_position);
  CHECK(is_loewner(make_sailing_boat(1.0), 1e-6).in_position);

  // the septagon construction needs its parameter small: at 0.01 the
  // diameter sits on the square diagonals, at 0.05 it has already moved
  // to the corner-to-triangle pairs
  CHECK(is_behrend(make_septagon(0.01)).in_position);
  CHECK(!is_behrend(make_septagon(0.05)).in_position);

  const auto cert = is_behrend(make_cube(3)).certificate;
  REQUIRE(cert.has_value());
  CHECK(cert->decomposition.residual < 1e-10);
}

TEST_CASE("distribution check on cube and crosspolytope") {
  const Polytope cube = make_cube(4);
  for (int i = 1; i <= 3; ++i) {
    std::vector<Eigen::VectorXd> basis;
    for (int k = 0; k < i; ++k) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
      e(k) = 1.0;
      basis.push_back(e);
    }
    const auto r = distribution_check(cube, basis);
    const double want = std::acos(std::sqrt(i / 4.0));
    CHECK(r.min_angle == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.max_angle == doctest::Approx(want).epsilon(1e-9));
  }

  std::vector<Eigen::VectorXd> e1 = {Eigen::VectorXd::Zero(3)};
  e1[0](0) = 1.0;
  const auto r = distribution_check(make_crosspolytope(3), e1);
  CHECK(r.min_angle == doctest::Approx(0.0));
  CHECK(r.max_angle == doctest::Approx(M_PI / 2.0));

  CHECK_THROWS_AS(distribution_check(make_sailing_boat(0.95), e1),
                  NotInBehrendPosition);
}

TEST_CASE("greedy simplex bound on the worked cases") {
  const auto square = greedy_simplex_bound(make_cube(2));
  CHECK(square.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(square.value >= 1.0 / (std::sqrt(2.0) * 2.0) - 1e-9);

  for (int n = 2; n <= 4; ++n) {
    const auto cross = greedy_simplex_bound(make_crosspolytope(n));
    CHECK(cross.value == doctest::Approx(1.0 / factorial(n)).epsilon(1e-12));
  }

  const auto ico = greedy_simplex_bound(make_icosahedron());
  CHECK(ico.value >= 1.0 / (std::sqrt(6.0) * std::pow(3.0, 1.5)) - 1e-9);
  CHECK(iq(make_icosahedron()) >= ico.value - 1e-9);
}

TEST_CASE("isominwidth normalization on cubes and boxes") {
  const auto r = isominwidth_normalize(make_cube(2));
  CHECK(iwq(r.body) == doctest::Approx(1.0).epsilon(1e-12));

  const auto box = isominwidth_normalize(stretch(make_cube(2), {3.0, 1.0}));
  CHECK(iwq(box.body) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(box.certificate.quotient_before == doctest::Approx(3.0));

  const auto tri = isominwidth_normalize(make_triangle(0.5));
  CHECK(iwq(tri.body) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(tri.certificate.residual <= tol::isominwidth_fit);
}

TEST_CASE("width-diameter duality on symmetric bodies") {
  CHECK(duality_check(make_cube(3)) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(duality_check(make_crosspolytope(2)) ==
        doctest::Approx(4.0).epsilon(1e-9));
  linalg::Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope hexagon = random_symmetric_polytope(2, rng);
    CHECK(duality_check(hexagon) == doctest::Approx(4.0).epsilon(1e-7));
  }
  CHECK_THROWS_AS(duality_check(make_regular_simplex(2)), NotSymmetric);
}

TEST_CASE("normalization is idempotent") {
  linalg::Rng rng(19);
  const Polytope p = random_polytope(3, rng);
  const auto first = behrend_normalize(p);
  const auto second = behrend_normalize(first.body);
  CHECK(std::abs(iq(second.body) - iq(first.body)) < 1e-8);
  CHECK(linalg::orthogonality_defect(second.map.matrix()) < 1e-5);
}

TEST_CASE("behrend agrees between a body and its difference body") {
  for (const Polytope& p :
       {make_cube(3), make_sailing_boat(0.95), make_septagon(0.01),
        make_regular_simplex(3)}) {
    CHECK(is_behrend(p).in_position ==
          is_behrend(difference_body(p)).in_position);
  }
}

TEST_CASE("iq never drops under normalization, random suite") {
  for (int n = 2; n <= 4; ++n) {
    linalg::Rng rng(300 + n);
    for (int trial = 0; trial < 100; ++trial) {
      const Polytope p = random_polytope(n, rng);
      const auto r = behrend_normalize(p);
      CHECK(iq(r.body) >= iq(p) - 1e-9);
    }
  }
}

TEST_CASE("uniqueness check with the identity seed") {
  const double dev =
      uniqueness_check(make_crosspolytope(3), {0}, PositionKind::Behrend);
  CHECK(dev < 1e-12);

  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  CHECK(uniqueness_check(make_crosspolytope(3), seeds) < 1e-6);
  CHECK(uniqueness_check(make_regular_simplex(3), seeds) < 1e-5);
}
