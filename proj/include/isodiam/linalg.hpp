#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "isodiam/tolerances.hpp"

// Small dense helpers shared by the geometry and solver modules.
// Everything is sized for n <= 8; clarity over asymptotics.

namespace isodiam::linalg {

// symmetric positive-definite square root via eigendecomposition
Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& m);

// rank of the affine hull of a point set (0 for a single point)
int affine_rank(const std::vector<Eigen::VectorXd>& pts, double tol = 1e-10);

struct NnlsResult {
  Eigen::VectorXd x;
  double residual;  // ||A x - b||_2
  int iterations;
};

// min ||A x - b|| over x >= 0, Lawson-Hanson active set
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                double grad_tol = tol::nnls_gradient);

// Deterministic random source: mt19937_64 stream with a Box-Muller
// gaussian on top, so sequences match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double gaussian();

  Eigen::VectorXd gaussian_vector(int n);
  Eigen::MatrixXd gaussian_matrix(int rows, int cols);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-ish orthogonal matrix: QR of a gaussian matrix, R-diagonal signs fixed
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

// how far b'b is from a multiple of the identity, relative to that multiple
double orthogonality_defect(const Eigen::MatrixXd& b);

}  // namespace isodiam::linalg
