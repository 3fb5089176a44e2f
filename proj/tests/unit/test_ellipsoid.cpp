#include <doctest.h>

#include <cmath>

#include "isodiam/bodies.hpp"
#include "isodiam/decomposition.hpp"
#include "isodiam/ellipsoid.hpp"
#include "isodiam/linalg.hpp"

using namespace isodiam;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

Eigen::MatrixXd weighted_outer_sum(const ContactData& c) {
  const int n = static_cast<int>(c.points[0].size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    s += c.weights(static_cast<int>(i)) * c.points[i] *
         c.points[i].transpose();
  }
  return s;
}

// Brute-force oracle for the minimum-area centered ellipse of a planar
// point set: scan rotation angles; per angle the best axis lengths come
// from the active-constraint candidates of max p*q over the polygon
// { p, q >= 0 : x_i^2 p + y_i^2 q <= 1 }.
struct Ellipse2 {
  Eigen::Matrix2d shape;
  double area;
};

Ellipse2 best_for_angle(const std::vector<Eigen::VectorXd>& pts, double th) {
  const double c = std::cos(th), s = std::sin(th);
  std::vector<double> xs, ys;
  for (const auto& p : pts) {
    xs.push_back(c * p(0) + s * p(1));
    ys.push_back(-s * p(0) + c * p(1));
  }
  const auto feasible = [&](double p, double q) {
    if (!(p > 0.0 && q > 0.0)) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] * xs[i] * p + ys[i] * ys[i] * q > 1.0 + 1e-12) return false;
    }
    return true;
  };
  double best = -1.0, bp = 0.0, bq = 0.0;
  const auto consider = [&](double p, double q) {
    if (feasible(p, q) && p * q > best) {
      best = p * q;
      bp = p;
      bq = q;
    }
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a1 = xs[i] * xs[i], b1 = ys[i] * ys[i];
    if (a1 > 1e-15 && b1 > 1e-15) consider(0.5 / a1, 0.5 / b1);
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double a2 = xs[j] * xs[j], b2 = ys[j] * ys[j];
      const double det = a1 * b2 - a2 * b1;
      if (std::abs(det) < 1e-15) continue;
      consider((b2 - b1) / det, (a1 - a2) / det);
    }
  }
  Ellipse2 out;
  if (best <= 0.0) {
    out.area = 1e300;
    return out;
  }
  Eigen::Matrix2d rot;
  rot << c, s, -s, c;  // rows rotate into the axis frame
  Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
  diag(0, 0) = bp;
  diag(1, 1) = bq;
  out.shape = rot.transpose() * diag * rot;
  out.area = M_PI / std::sqrt(bp * bq);
  return out;
}

Ellipse2 mvee2_bruteforce(const std::vector<Eigen::VectorXd>& pts) {
  Ellipse2 best;
  best.area = 1e300;
  for (int k = 0; k < 4000; ++k) {
    const double th = M_PI * k / 4000.0;
    const Ellipse2 e = best_for_angle(pts, th);
    if (e.area < best.area) best = e;
  }
  return best;
}

}  // namespace

TEST_CASE("ellipsoid volume and containment") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  const Ellipsoid ball(m, Eigen::VectorXd::Zero(3));
  CHECK(ball.volume() == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-12));

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(Ellipsoid(bad, Eigen::VectorXd::Zero(2)), RankDeficient);
}

TEST_CASE("centered solver on an orthonormal frame") {
  const auto r = mvee_centered(make_crosspolytope(4).vertices());
  CHECK((r.ellipsoid.shape() - Eigen::MatrixXd::Identity(4, 4)).norm() <
        1e-10);
  CHECK(r.contact.points.size() == 4);  // one per antipodal class
  for (int i = 0; i < r.contact.weights.size(); ++i) {
    CHECK(r.contact.weights(i) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(r.contact.residual < 1e-10);
}

TEST_CASE("centered solver on the cube gives the sqrt(n) ball") {
  for (int n = 2; n <= 4; ++n) {
    const auto r = mvee_centered(make_cube(n).vertices());
    CHECK((r.ellipsoid.shape() -
           Eigen::MatrixXd::Identity(n, n) / static_cast<double>(n))
              .norm() < 1e-9);
    // uniform weights decompose the identity exactly: sum over the 2^n
    // vertices of (n / 2^n) uu' = I
    CHECK(weighted_outer_sum(r.contact).isApprox(
        Eigen::MatrixXd::Identity(n, n), 1e-9));
    CHECK(std::abs(r.contact.weights.sum() - n) < 1e-6);
  }
}

TEST_CASE("centered solver matches the planar brute-force oracle") {
  // hexagon conv{+-e1, +-e2, +-(e1 - e2)}
  const std::vector<Eigen::VectorXd> hexagon = {
      vec2(1, 0), vec2(-1, 0), vec2(0, 1),
      vec2(0, -1), vec2(1, -1), vec2(-1, 1)};
  const auto r = mvee_centered(hexagon);

  const Ellipse2 oracle = mvee2_bruteforce(hexagon);
  CHECK(r.ellipsoid.volume() <= oracle.area * (1.0 + 1e-7));
  for (const auto& p : hexagon) {
    CHECK(r.ellipsoid.contains(p, 1e-7));
  }
  CHECK((r.ellipsoid.shape() - oracle.shape).norm() < 1e-3);

  // axes along (1,1)/sqrt2 (half-axis sqrt(2/3)) and (1,-1)/sqrt2
  // (half-axis sqrt 2); in cartesian terms the shape is [[1,.5],[.5,1]]
  Eigen::Matrix2d want;
  want << 1.0, 0.5, 0.5, 1.0;
  CHECK((r.ellipsoid.shape() - want).norm() < 1e-9);
}

TEST_CASE("centered solver rejects asymmetric or flat input") {
  CHECK_THROWS_AS(mvee_centered({vec2(1, 0), vec2(-1, 0), vec2(0, 1)}),
                  NotSymmetric);
  CHECK_THROWS_AS(mvee_centered({vec2(1, 0), vec2(-1, 0)}), RankDeficient);
}

TEST_CASE("general solver on the regular simplex") {
  for (int n = 2; n <= 4; ++n) {
    const auto r = mvee_general(make_regular_simplex(n).vertices());
    CHECK((r.ellipsoid.shape() - Eigen::MatrixXd::Identity(n, n)).norm() <
          1e-8);
    CHECK(r.ellipsoid.center().norm() < 1e-8);
    CHECK(r.contact.points.size() == static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < r.contact.weights.size(); ++i) {
      CHECK(r.contact.weights(i) ==
            doctest::Approx(static_cast<double>(n) / (n + 1)).epsilon(1e-8));
    }
    CHECK(r.contact.barycenter_residual < 1e-5);
  }
}

TEST_CASE("general solver on the sailing boat finds the unit disk") {
  const auto r = mvee_general(make_sailing_boat(0.95).vertices());
  CHECK((r.ellipsoid.shape() - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-7);
  CHECK(r.ellipsoid.center().norm() < 1e-7);
  // the equilateral triangle's vertices carry the decomposition
  int triangle_contacts = 0;
  const std::vector<Eigen::VectorXd> tri = {
      vec2(0, 1), vec2(std::sqrt(3.0) / 2.0, -0.5),
      vec2(-std::sqrt(3.0) / 2.0, -0.5)};
  for (const auto& u : r.contact.points) {
    for (const auto& t : tri) {
      if ((u - t).norm() < 1e-5) ++triangle_contacts;
    }
  }
  CHECK(triangle_contacts >= 3);
  CHECK(r.contact.residual < 1e-5);
  CHECK(r.contact.barycenter_residual < 1e-5);
}

TEST_CASE("general solver on a translated sample of a ball") {
  Eigen::VectorXd c = vec2(3.0, -1.0);
  const double radius = 0.5;
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 2; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
    e(i) = radius;
    pts.push_back(c + e);
    pts.push_back(c - e);
  }
  const auto r = mvee_general(pts);
  CHECK((r.ellipsoid.center() - c).norm() < 1e-8);
  CHECK((r.ellipsoid.shape() -
         Eigen::MatrixXd::Identity(2, 2) / (radius * radius))
            .norm() < 1e-6);
}

TEST_CASE("loewner check on the scaled cube and the septagon") {
  const Polytope cube_in_ball = make_cube(3).scaled(1.0 / std::sqrt(3.0));
  const auto ok = is_loewner(cube_in_ball, 1e-6);
  CHECK(ok.in_position);
  CHECK(ok.contact.has_value());

  const auto bad = is_loewner(make_septagon(0.05), 1e-6);
  CHECK(!bad.in_position);
  REQUIRE(bad.offending.has_value());
  CHECK(bad.offending->volume() < unit_ball_volume(2) - 1e-4);

  CHECK_THROWS_AS(is_loewner(make_cube(3), 1e-6), NotContainedInBall);
}

TEST_CASE("john ellipsoid via polarity") {
  const Ellipsoid jc = john_ellipsoid_symmetric(make_cube(3));
  CHECK((jc.shape() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-8);

  const Ellipsoid jx = john_ellipsoid_symmetric(make_crosspolytope(3));
  CHECK((jx.shape() - 3.0 * Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-7);

  Eigen::MatrixXd stretch(2, 2);
  stretch << 2.0, 0.0, 0.0, 1.0;
  const Polytope box = make_cube(2).transformed(LinearMap(stretch));
  const Ellipsoid jb = john_ellipsoid_symmetric(box);
  Eigen::Matrix2d want;
  want << 0.25, 0.0, 0.0, 1.0;
  CHECK((jb.shape() - want).norm() < 1e-8);
}

TEST_CASE("john and loewner shapes are mutually inverse") {
  linalg::Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n + 3; ++i) {
      const Eigen::VectorXd v = rng.gaussian_vector(n);
      pts.push_back(v);
      pts.push_back(-v);
    }
    if (linalg::affine_rank(pts) < n) continue;
    const Polytope p = Polytope::from_points(pts);
    const Eigen::MatrixXd john = john_ellipsoid_symmetric(p).shape();
    const Eigen::MatrixXd loewner =
        mvee_centered(polar(p).vertices()).ellipsoid.shape();
    CHECK((john * loewner - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-6);
  }
}

TEST_CASE("normalization map is the SPD square root") {
  const Ellipsoid ball(Eigen::MatrixXd::Identity(3, 3),
                       Eigen::VectorXd::Zero(3));
  CHECK((normalization_map(ball).matrix() - Eigen::MatrixXd::Identity(3, 3))
            .norm() < 1e-12);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 1.0;
  const Ellipsoid e(diag, Eigen::VectorXd::Zero(2));
  Eigen::Matrix2d want;
  want << 2.0, 0.0, 0.0, 1.0;
  CHECK((normalization_map(e).matrix() - want).norm() < 1e-12);

  linalg::Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd g = rng.gaussian_matrix(4, 4);
    const Eigen::MatrixXd spd =
        g * g.transpose() + 0.1 * Eigen::MatrixXd::Identity(4, 4);
    const Eigen::MatrixXd root = linalg::sqrtm_spd(spd);
    CHECK((root.transpose() * root - spd).norm() < 1e-10 * spd.norm());
  }
}

TEST_CASE("dual objective is nondecreasing along the iteration") {
  linalg::Rng rng(37);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 12; ++i) {
    const Eigen::VectorXd v = rng.gaussian_vector(3);
    pts.push_back(v);
    pts.push_back(-v);
  }
  MveeOptions opts;
  opts.record_objective = true;
  const auto r = mvee_centered(pts, opts);
  REQUIRE(r.objective_trace.size() > 1);
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    CHECK(r.objective_trace[i] >=
          r.objective_trace[i - 1] - 1e-12 * std::abs(r.objective_trace[i]));
  }
  CHECK(std::abs(r.contact.weights.sum() - 3.0) <= 1e-6);
}

TEST_CASE("warm starts reach the same ellipsoid") {
  linalg::Rng rng(43);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 10; ++i) {
    const Eigen::VectorXd v = rng.gaussian_vector(3);
    pts.push_back(v);
    pts.push_back(-v);
  }
  const auto cold = mvee_centered(pts);

  MveeOptions lopsided;
  lopsided.warm_start = Eigen::VectorXd::Zero(10);
  lopsided.warm_start(0) = 0.9;
  lopsided.warm_start(1) = 0.05;
  lopsided.warm_start(2) = 0.05;
  const auto warmed = mvee_centered(pts, lopsided);
  CHECK((warmed.ellipsoid.shape() - cold.ellipsoid.shape()).norm() < 1e-6);
}

TEST_CASE("solver error paths") {
  linalg::Rng rng(47);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 15; ++i) {
    const Eigen::VectorXd v = rng.gaussian_vector(4);
    pts.push_back(v);
    pts.push_back(-v);
  }
  MveeOptions strangled;
  strangled.max_iterations = 2;
  try {
    mvee_centered(pts, strangled);
    FAIL("expected MaxIterations");
  } catch (const MaxIterations& e) {
    CHECK(e.achieved_gap > 0.0);
  }

  // collinear input cannot span the plane
  Eigen::VectorXd a(2), b(2), c(2);
  a << 1, 1;
  b << 2, 2;
  c << 3, 3;
  CHECK_THROWS_AS(mvee_general({a, b, c}), RankDeficient);
}

TEST_CASE("re-fitting contact directions cannot do worse") {
  linalg::Rng rng(59);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 12; ++i) {
    const Eigen::VectorXd v = rng.gaussian_vector(3);
    pts.push_back(v);
    pts.push_back(-v);
  }
  const auto r = mvee_centered(pts);
  // fit_weights solves the same feasibility problem the contact weights
  // came from, so its optimum is at least as good
  const auto fit = fit_weights(r.contact.points, 1.0);
  CHECK(fit.residual <= r.contact.residual + 1e-12);
}

TEST_CASE("symmetric contact sets stay within binom(n+1,2)") {
  linalg::Rng rng(97);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n + 6; ++i) {
      const Eigen::VectorXd v = rng.gaussian_vector(n);
      pts.push_back(v);
      pts.push_back(-v);
    }
    if (linalg::affine_rank(pts) < n) continue;
    const auto r = mvee_centered(pts);
    CHECK(r.contact.points.size() <=
          static_cast<std::size_t>(n * (n + 1) / 2));
    CHECK(static_cast<int>(r.contact.points.size()) >= n);
    CHECK(r.contact.residual < 1e-5);
  }
}

TEST_CASE("solver output rotates with the input") {
  linalg::Rng rng(41);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 8; ++i) {
    const Eigen::VectorXd v = rng.gaussian_vector(3);
    pts.push_back(v);
    pts.push_back(-v);
  }
  const Eigen::MatrixXd base = mvee_centered(pts).ellipsoid.shape();
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd q = linalg::random_orthogonal(3, rng);
    std::vector<Eigen::VectorXd> rotated;
    for (const auto& v : pts) rotated.push_back(q * v);
    const Eigen::MatrixXd m = mvee_centered(rotated).ellipsoid.shape();
    CHECK((q.transpose() * m * q - base).norm() < 1e-6);
  }
}
