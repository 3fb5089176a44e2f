#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "isodiam/polytope.hpp"
#include "isodiam/tolerances.hpp"

namespace isodiam {

// {x : (x-c)' M (x-c) <= 1} with M symmetric positive definite.
class Ellipsoid {
 public:
  Ellipsoid(Eigen::MatrixXd shape, Eigen::VectorXd center);

  int dim() const { return static_cast<int>(center_.size()); }
  const Eigen::MatrixXd& shape() const { return shape_; }
  const Eigen::VectorXd& center() const { return center_; }

  double volume() const;  // kappa_n / sqrt(det M)
  bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;

 private:
  Eigen::MatrixXd shape_;
  Eigen::VectorXd center_;
};

double unit_ball_volume(int n);

// Contact points of an enclosing ellipsoid, mapped to the unit sphere of
// the normalized body, with the weights of the induced decomposition of
// the identity. For symmetric inputs one representative per antipodal
// class is kept.
struct ContactData {
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd weights;
  double residual;             // || sum w uu' - I ||_F
  double barycenter_residual;  // || sum w u ||, general case only
};

struct MveeOptions {
  double eps = tol::mvee_eps;
  long max_iterations = tol::mvee_max_iterations;
  bool record_objective = false;
  // optional initial dual weights, one per solver column (antipodal class
  // in the centered case, input point otherwise); rescaled to sum 1
  Eigen::VectorXd warm_start;
};

struct MveeResult {
  Ellipsoid ellipsoid;
  ContactData contact;
  long iterations = 0;
  double gap = 0.0;
  std::vector<double> objective_trace;  // filled when record_objective
};

// Minimum-volume origin-centered ellipsoid of a symmetric point set.
// Multiplicative-weight ascent on the centered log-det problem, exact
// line search per step, with away steps; runs on antipodal classes.
MveeResult mvee_centered(const std::vector<Eigen::VectorXd>& points,
                         const MveeOptions& opts = {});

// Minimum-volume enclosing ellipsoid with free center (lift to R^{n+1}).
MveeResult mvee_general(const std::vector<Eigen::VectorXd>& points,
                        const MveeOptions& opts = {});

struct LoewnerCheck {
  bool in_position;
  std::optional<ContactData> contact;   // on success
  std::optional<Ellipsoid> offending;   // the actual MVEE on failure
};

// is the unit ball the minimum volume ellipsoid containing P?
LoewnerCheck is_loewner(const Polytope& p, double tol);

// maximal inscribed centered ellipsoid of a symmetric body, via polarity:
// shape(John(P)) = shape(Loewner(polar(P)))^{-1}
Ellipsoid john_ellipsoid_symmetric(const Polytope& p,
                                   const MveeOptions& opts = {});

// SPD square root of the shape matrix; maps the ellipsoid onto the ball
LinearMap normalization_map(const Ellipsoid& e);

}  // namespace isodiam
