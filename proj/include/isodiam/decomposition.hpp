#pragma once

#include <Eigen/Dense>
#include <vector>

#include "isodiam/errors.hpp"
#include "isodiam/tolerances.hpp"

namespace isodiam {

// I_n = sum_i w_i u_i u_i' with unit u_i and w_i >= 0, up to `residual`.
struct IdentityDecomposition {
  int dim = 0;
  std::vector<Eigen::VectorXd> directions;
  Eigen::VectorXd weights;
  double residual = 0.0;

  // normalizes directions, computes the residual
  static IdentityDecomposition make(std::vector<Eigen::VectorXd> directions,
                                    Eigen::VectorXd weights);
};

struct VerifyReport {
  double frobenius_residual;
  double trace_deviation;  // |sum w_i - n|
  bool pass;
};

VerifyReport verify(const std::vector<Eigen::VectorXd>& dirs,
                    const Eigen::VectorXd& weights, double tol);

struct FitResult {
  bool feasible;
  Eigen::VectorXd weights;
  double residual;
};

// min || sum w uu' - I ||_F over w >= 0 by NNLS on the vectorized
// symmetric system; feasible iff the optimum lands within tol
FitResult fit_weights(const std::vector<Eigen::VectorXd>& dirs, double tol);

struct CauchyBinetReport {
  double lhs;  // binom(n, i)
  double rhs;  // sum over i-subsets J of prod(w_J) * det(U_J' U_J)
  double gap;
};

CauchyBinetReport cauchy_binet_check(const IdentityDecomposition& d, int i);

// vol_j(conv{0, u_1..u_j}) = sqrt(det(U'U)) / j! for unit columns
double gram_simplex_volume(const Eigen::MatrixXd& u);

struct SigmaBound {
  double sigma;  // sigma_d(w), via Newton's identities
  double bound;  // binom(m, d) (c/m)^d with c = sum w
  bool within;
};

SigmaBound sigma_bound_check(const Eigen::VectorXd& weights, int d);

double binomial(int n, int k);  // exact for the sizes used here

}  // namespace isodiam
