#include "isodiam/acceptance.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "isodiam/bodies.hpp"
#include "isodiam/decomposition.hpp"
#include "isodiam/dr.hpp"
#include "isodiam/ellipsoid.hpp"
#include "isodiam/positions.hpp"

namespace isodiam {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(12);
  ss << x;
  return ss.str();
}

struct Check {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "FAILED: " << what << "; ";
    }
  }
  void note(const std::string& s) { log << s << "; "; }
};

using Runner = void (*)(Check&);

CriterionResult run(int id, const std::string& title, Runner fn,
                    std::ostream* progress) {
  Check c;
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.log << "exception: " << e.what();
  }
  if (progress) {
    *progress << (c.ok ? "PASS" : "FAIL") << "  " << id << ". " << title;
    const std::string detail = c.log.str();
    if (!detail.empty()) *progress << "  [" << detail << "]";
    *progress << std::endl;
  }
  return {id, title, c.ok, c.log.str()};
}

// ---------------------------------------------------------------- fixtures

constexpr double kSeptagonEps = 0.01;  // small enough for the diameter to
                                       // sit on the square diagonals

Polytope stretched(const Polytope& p, const Eigen::VectorXd& diag) {
  return p.transformed(LinearMap(Eigen::MatrixXd(diag.asDiagonal())));
}

}  // namespace

std::vector<std::pair<std::string, Polytope>> acceptance_fixtures() {
  std::vector<std::pair<std::string, Polytope>> f;
  for (int n = 2; n <= 4; ++n) {
    f.emplace_back("cube" + std::to_string(n), make_cube(n));
    f.emplace_back("crosspolytope" + std::to_string(n), make_crosspolytope(n));
    f.emplace_back("simplex" + std::to_string(n), make_regular_simplex(n));
  }
  f.emplace_back("icosahedron", make_icosahedron());
  f.emplace_back("sailing_boat", make_sailing_boat(0.95));
  f.emplace_back("septagon", make_septagon(kSeptagonEps));
  f.emplace_back("triangle", make_triangle(0.5));
  Eigen::VectorXd d2(2);
  d2 << 2.0, 1.0;
  f.emplace_back("stretched_cube2", stretched(make_cube(2), d2));
  return f;
}

Polytope random_symmetric_polytope(int n, linalg::Rng& rng) {
  for (;;) {
    const int k = n + 2 + static_cast<int>(rng.uniform() * 4);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd v = rng.gaussian_vector(n);
      pts.push_back(v);
      pts.push_back(-v);
    }
    if (linalg::affine_rank(pts) == n) return Polytope::from_points(pts);
  }
}

Polytope random_polytope(int n, linalg::Rng& rng) {
  for (;;) {
    const int k = n + 3 + static_cast<int>(rng.uniform() * 6);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < k; ++i) pts.push_back(rng.gaussian_vector(n));
    if (linalg::affine_rank(pts) == n) return Polytope::from_points(pts);
  }
}

namespace {

// 1. crosspolytope is the symmetric optimum and stays fixed
void criterion_crosspolytope(Check& c) {
  for (int n = 2; n <= 5; ++n) {
    const auto r = behrend_normalize(make_crosspolytope(n));
    const double want = 1.0 / factorial(n);
    c.expect(std::abs(iq(r.body) - want) <= 1e-9,
             "iq(crosspolytope " + std::to_string(n) + ") = " +
                 fmt(iq(r.body)) + " vs 1/n! = " + fmt(want));
    c.expect(linalg::orthogonality_defect(r.map.matrix()) <= 1e-6,
             "map not orthogonal-times-scalar at n=" + std::to_string(n));
  }
}

// 2. regular simplex reproduces sqrt(n+1)/(n! 2^{n/2})
void criterion_simplex(Check& c) {
  for (int n = 2; n <= 5; ++n) {
    const auto r = behrend_normalize(make_regular_simplex(n));
    const double want = std::sqrt(n + 1.0) / (factorial(n) * std::pow(2.0, n / 2.0));
    c.expect(std::abs(iq(r.body) - want) <= 1e-6,
             "iq(simplex " + std::to_string(n) + ") = " + fmt(iq(r.body)) +
                 " vs " + fmt(want));
    if (n == 3) {
      c.note("n=3 value " + fmt(iq(r.body)) + " (1/(6 sqrt 2) = " +
             fmt(1.0 / (6.0 * std::sqrt(2.0))) + ")");
    }
  }
}

// 3 + 4 share the random symmetric suite; iq after normalization must
// clear both the symmetric optimum 1/n! and the DR-based bound
void criterion_symmetric_bound(Check& c) {
  for (int n = 2; n <= 4; ++n) {
    linalg::Rng rng(1000 + n);
    const double dr_floor = dr_lower_bound(n * (n + 1) / 2, n, n);
    double worst = 1e30;
    for (int trial = 0; trial < 100; ++trial) {
      const Polytope p = random_symmetric_polytope(n, rng);
      const double q = iq(behrend_normalize(p).body);
      worst = std::min(worst, q);
      if (q < 1.0 / factorial(n) - 1e-6) {
        c.expect(false, "n=" + std::to_string(n) + " trial " +
                            std::to_string(trial) + ": iq " + fmt(q) +
                            " < 1/n!");
        break;
      }
      if (q < dr_floor - 1e-6) {
        c.expect(false, "n=" + std::to_string(n) + ": iq " + fmt(q) +
                            " below DR floor " + fmt(dr_floor));
        break;
      }
    }
    c.note("n=" + std::to_string(n) + " min iq " + fmt(worst) +
           " (1/n! = " + fmt(1.0 / factorial(n)) + ")");
  }
}

void criterion_asymptotic_bound(Check& c) {
  // same random suite as criterion 3, asserted against the DR bound
  for (int n = 2; n <= 4; ++n) {
    linalg::Rng rng(1000 + n);
    const double dr_floor = dr_lower_bound(n * (n + 1) / 2, n, n);
    for (int trial = 0; trial < 100; ++trial) {
      const Polytope p = random_symmetric_polytope(n, rng);
      const double q = iq(behrend_normalize(p).body);
      if (q < dr_floor - 1e-6) {
        c.expect(false, "n=" + std::to_string(n) + ": iq " + fmt(q) +
                            " below " + fmt(dr_floor));
        break;
      }
    }
    if (n == 3) c.note("n=3 threshold " + fmt(dr_floor) + " (sqrt(10)/30)");
  }
}

// 5. Behrend <-> difference body; certificates; the two one-way examples
void criterion_equivalence(Check& c) {
  for (const auto& [name, p] : acceptance_fixtures()) {
    const bool direct = is_behrend(p).in_position;
    const bool diff = is_behrend(difference_body(p)).in_position;
    c.expect(direct == diff, name + ": is_behrend disagrees with difference body");
    const auto cert = behrend_normalize(p).certificate;
    c.expect(cert.residual <= tol::behrend_fit,
             name + ": certificate residual " + fmt(cert.residual));
  }

  const Polytope boat = make_sailing_boat(0.95);
  c.expect(is_loewner(boat, 1e-6).in_position, "sailing boat not Loewner");
  c.expect(!is_behrend(boat).in_position, "sailing boat wrongly Behrend");

  const Polytope sept = make_septagon(kSeptagonEps);
  c.expect(!is_loewner(sept, 1e-6).in_position, "septagon wrongly Loewner");
  c.expect(is_behrend(sept).in_position, "septagon not Behrend");

  // At eps = 0.05 the construction stops working: the diameter moves to
  // the square-corner / triangle-vertex pairs and the body leaves the
  // Behrend position. Report the measured fact alongside.
  const Polytope sept05 = make_septagon(0.05);
  const double diag = 2.0 * 0.95;
  c.note("septagon eps=0.05: D = " + fmt(sept05.diameter()) +
         " > diagonal " + fmt(diag) + ", is_behrend = " +
         (is_behrend(sept05).in_position ? "true" : "false") +
         "; fixtures use eps = " + fmt(kSeptagonEps));
}

// 6. angle distribution on the cube, random subspaces, spherical covering
void criterion_distribution(Check& c) {
  for (int n = 2; n <= 5; ++n) {
    const Polytope cube = make_cube(n);
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<Eigen::VectorXd> basis;
      for (int k = 0; k < i; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(k) = 1.0;
        basis.push_back(e);
      }
      const AngleRange r = distribution_check(cube, basis);
      const double want = std::acos(std::sqrt(static_cast<double>(i) / n));
      c.expect(std::abs(r.min_angle - want) <= 1e-9 &&
                   std::abs(r.max_angle - want) <= 1e-9,
               "cube n=" + std::to_string(n) + " i=" + std::to_string(i) +
                   ": angles [" + fmt(r.min_angle) + ", " + fmt(r.max_angle) +
                   "] vs " + fmt(want));
    }
  }

  linalg::Rng rng(42);
  for (const auto& [name, p] : acceptance_fixtures()) {
    if (!is_behrend(p).in_position) continue;
    const int n = p.dim();
    for (int trial = 0; trial < 100; ++trial) {
      const int i = 1 + static_cast<int>(rng.uniform() * (n - 1));
      const Eigen::MatrixXd q = linalg::random_orthogonal(n, rng);
      std::vector<Eigen::VectorXd> basis;
      for (int k = 0; k < i; ++k) basis.push_back(q.col(k));
      try {
        distribution_check(p, basis);  // throws when the bounds fail
      } catch (const std::exception& e) {
        c.expect(false, name + ": " + e.what());
        break;
      }
    }

    // spherical covering: caps of radius arccos(sqrt(1/n)) at the
    // diametrical directions cover the sphere
    const auto dirs = diametrical_directions(p, tol::behrend_diametrical_rel)
                          .antipodal_classes();
    const double need = std::sqrt(1.0 / n) - 1e-9;
    for (int s = 0; s < 10000; ++s) {
      const Eigen::VectorXd v = rng.gaussian_vector(n).normalized();
      double bestdot = 0.0;
      for (const auto& u : dirs) {
        bestdot = std::max(bestdot, std::abs(u.dot(v)));
      }
      if (bestdot < need) {
        c.expect(false, name + ": covering gap at sample " + std::to_string(s));
        break;
      }
    }
  }
}

// 7. greedy simplex bound on every Behrend fixture
void criterion_greedy(Check& c) {
  for (const auto& [name, p] : acceptance_fixtures()) {
    if (!is_behrend(p).in_position) continue;
    const int n = p.dim();
    try {
      const GreedyBound g = greedy_simplex_bound(p);
      const double floor = 1.0 / (std::sqrt(factorial(n)) * std::pow(n, n / 2.0));
      c.expect(g.value >= floor - 1e-9,
               name + ": greedy " + fmt(g.value) + " < " + fmt(floor));
      c.expect(iq(p) >= g.value - 1e-9,
               name + ": iq " + fmt(iq(p)) + " < greedy " + fmt(g.value));
    } catch (const std::exception& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
}

// 8. closed forms and equiangular sharpness
void criterion_dr_formulas(Check& c) {
  for (int n = 1; n <= 6; ++n) {
    for (int j = 1; j <= n; ++j) {
      const double a = dr_lower_bound(n, n, j);
      c.expect(std::abs(a - 1.0 / factorial(j)) <= 1e-12,
               "DR(n,n,j) at (" + std::to_string(n) + "," + std::to_string(j) +
                   ")");
      const double b = dr_lower_bound(n + 1, n, j);
      c.expect(std::abs(b - dr_simplex_value(n, j)) <= 1e-12,
               "DR(n+1,n,j) at (" + std::to_string(n) + "," +
                   std::to_string(j) + ")");
    }
  }

  {
    const DRWitness w = witness_library("regular_simplex 2");
    const MaxSimplex pair = max_simplex_volume(w.decomposition, 2);
    c.expect(std::abs(pair.value - dr_lower_bound(3, 2, 2)) <= 1e-12,
             "(3,2,2) sharpness: " + fmt(pair.value));
    const auto eq = equiangular_check(w.decomposition.directions);
    c.expect(eq.equiangular && std::abs(eq.common_cos - 0.5) <= 1e-12,
             "triangle lines not equiangular at 1/2");
  }
  {
    const DRWitness w = witness_library("icosahedron_lines");
    const MaxSimplex pair = max_simplex_volume(w.decomposition, 2);
    c.expect(std::abs(pair.value - dr_lower_bound(6, 3, 2)) <= 1e-12,
             "(6,3,2) sharpness: " + fmt(pair.value));
    const auto eq = equiangular_check(w.decomposition.directions);
    c.expect(eq.equiangular &&
                 std::abs(eq.common_cos - 1.0 / std::sqrt(5.0)) <= 1e-12,
             "icosahedron lines not equiangular at 1/sqrt(5)");
  }
}

// 9. the Cauchy-Binet identity on every stored witness
void criterion_cauchy_binet(Check& c) {
  std::vector<std::string> names = {"dr533", "icosahedron_lines"};
  for (int n = 2; n <= 4; ++n) {
    names.push_back("crosspolytope " + std::to_string(n));
    names.push_back("regular_simplex " + std::to_string(n));
  }
  for (const auto& name : names) {
    const DRWitness w = witness_library(name);
    for (int i = 1; i <= w.decomposition.dim; ++i) {
      const auto r = cauchy_binet_check(w.decomposition, i);
      c.expect(std::abs(r.gap) <= 1e-9,
               name + " i=" + std::to_string(i) + ": gap " + fmt(r.gap));
    }
  }
}

// 10. elementary symmetric polynomial bound, randomized
void criterion_sigma_bound(Check& c) {
  linalg::Rng rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform() * 10);
    const int d = 1 + static_cast<int>(rng.uniform() * m);
    Eigen::VectorXd w(m);
    for (int i = 0; i < m; ++i) {
      const double g = rng.gaussian();
      w(i) = rng.uniform() < 0.1 ? 0.0 : g * g;  // sprinkle zeros
    }
    const SigmaBound s = sigma_bound_check(w, d);
    if (!s.within) {
      c.expect(false, "trial " + std::to_string(trial) + ": sigma " +
                          fmt(s.sigma) + " > bound " + fmt(s.bound));
      return;
    }
  }
}

// 11. the randomized minimax search reproduces the reported values
void criterion_dr_search(Check& c) {
  DrSearchOptions opts;
  opts.seed = 1;
  opts.restarts = 64;
  opts.iters = 5000;

  const DRWitness w5 = dr_search(5, 3, opts);
  c.expect(w5.value <= 0.125 + 1e-3,
           "DR(5,3,3) search " + fmt(w5.value) + " > 1/8 + 1e-3");
  c.expect(w5.value >= dr_lower_bound(5, 3, 3),
           "DR(5,3,3) search below the proven bound");
  c.expect(w5.decomposition.residual < 1e-8, "DR(5,3,3) witness residual");
  c.expect(std::abs(w5.decomposition.weights.sum() - 3.0) <= 1e-8,
           "DR(5,3,3) witness trace");
  c.note("search(5,3) = " + fmt(w5.value) + ", |diff to 1/8| = " +
         fmt(std::abs(w5.value - 0.125)));

  const DRWitness w6 = dr_search(6, 3, opts);
  const double target = 1.0 / (6.0 * std::sqrt(2.0));
  c.expect(w6.value <= target + 1e-3,
           "DR(6,3,3) search " + fmt(w6.value) + " > 1/(6 sqrt 2) + 1e-3");
  c.expect(w6.value >= dr_lower_bound(6, 3, 3),
           "DR(6,3,3) search below the proven bound");
  c.expect(w6.decomposition.residual < 1e-8, "DR(6,3,3) witness residual");
  c.note("search(6,3) = " + fmt(w6.value) + ", |diff to 1/(6 sqrt 2)| = " +
         fmt(std::abs(w6.value - target)));
}

// 12. reverse isominwidth: iwq <= 1 with the cube as the equality case
void criterion_isominwidth(Check& c) {
  for (int n = 2; n <= 4; ++n) {
    const auto r = isominwidth_normalize(make_cube(n));
    c.expect(std::abs(iwq(r.body) - 1.0) <= 1e-9,
             "iwq(cube " + std::to_string(n) + ") = " + fmt(iwq(r.body)));
  }

  for (const auto& [name, p] : acceptance_fixtures()) {
    try {
      const auto r = isominwidth_normalize(p);  // throws if iwq > 1 + 1e-6
      c.expect(iwq(r.body) <= 1.0 + 1e-6, name + ": iwq above 1");
      c.expect(r.certificate.residual <= tol::isominwidth_fit,
               name + ": width certificate residual " +
                   fmt(r.certificate.residual));
    } catch (const std::exception& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
  for (int n = 2; n <= 3; ++n) {
    linalg::Rng rng(2000 + n);
    for (int trial = 0; trial < 100; ++trial) {
      const Polytope p = random_polytope(n, rng);
      try {
        isominwidth_normalize(p);
      } catch (const std::exception& e) {
        c.expect(false, "random n=" + std::to_string(n) + " trial " +
                            std::to_string(trial) + ": " + e.what());
        break;
      }
    }
  }

  const Polytope tri = make_triangle(0.5);
  c.expect(std::abs(iwq(tri) - 1.0 / std::sqrt(3.0)) <= 1e-9,
           "equilateral triangle iwq = " + fmt(iwq(tri)));
  const auto tri_norm = isominwidth_normalize(tri);
  c.expect(std::abs(iwq(tri_norm.body) - 1.0 / std::sqrt(3.0)) <= 1e-6,
           "triangle iwq moved after normalization");

  for (int n = 2; n <= 4; ++n) {
    duality_check(make_cube(n));           // throws beyond 1e-5
    duality_check(make_crosspolytope(n));
  }
  linalg::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Polytope hexagon = random_symmetric_polytope(2, rng);
    try {
      duality_check(hexagon);
    } catch (const std::exception& e) {
      c.expect(false, std::string("duality on random hexagon: ") + e.what());
      break;
    }
  }
}

// 13. uniqueness up to orthogonal maps and scalings, both pipelines
void criterion_uniqueness(Check& c) {
  std::vector<std::uint64_t> seeds = {0};  // identity first
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);

  linalg::Rng rng(5);
  const Polytope rand3 = random_polytope(3, rng);

  const double d1 = uniqueness_check(make_regular_simplex(3), seeds,
                                     PositionKind::Behrend);
  c.expect(d1 <= 1e-5, "behrend simplex deviation " + fmt(d1));
  const double d2 = uniqueness_check(rand3, seeds, PositionKind::Behrend);
  c.expect(d2 <= 1e-5, "behrend random deviation " + fmt(d2));

  const double d3 = uniqueness_check(make_cube(3), seeds,
                                     PositionKind::Isominwidth);
  c.expect(d3 <= 1e-5, "isominwidth cube deviation " + fmt(d3));
  const Polytope rand2 = random_polytope(2, rng);
  const double d4 = uniqueness_check(rand2, seeds, PositionKind::Isominwidth);
  c.expect(d4 <= 1e-5, "isominwidth random deviation " + fmt(d4));
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(std::ostream* progress) {
  std::vector<CriterionResult> out;
  out.push_back(run(1, "crosspolytope equality (iq = 1/n!)",
                    criterion_crosspolytope, progress));
  out.push_back(run(2, "regular simplex value", criterion_simplex, progress));
  out.push_back(run(3, "symmetric lower bound on random bodies",
                    criterion_symmetric_bound, progress));
  out.push_back(run(4, "asymptotic DR bound on random bodies",
                    criterion_asymptotic_bound, progress));
  out.push_back(run(5, "Behrend/Loewner equivalences and counterexamples",
                    criterion_equivalence, progress));
  out.push_back(run(6, "distribution of diametrical directions",
                    criterion_distribution, progress));
  out.push_back(run(7, "greedy simplex bound", criterion_greedy, progress));
  out.push_back(run(8, "DR closed forms and equiangular sharpness",
                    criterion_dr_formulas, progress));
  out.push_back(run(9, "Cauchy-Binet identity on witnesses",
                    criterion_cauchy_binet, progress));
  out.push_back(run(10, "elementary symmetric polynomial bound",
                    criterion_sigma_bound, progress));
  out.push_back(run(11, "randomized DR search reproduction",
                    criterion_dr_search, progress));
  out.push_back(run(12, "reverse isominwidth inequality",
                    criterion_isominwidth, progress));
  out.push_back(run(13, "uniqueness of optimal positions",
                    criterion_uniqueness, progress));
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace isodiam
