#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isodiam/decomposition.hpp"

namespace isodiam {

// Query for DR(m, n, j): the guaranteed j-simplex volume over all
// m-vector decompositions of I_n. m above n(n+1)/2 is clamped (the
// constant is flat beyond that point).
struct DRQuery {
  int m;
  int n;
  int j;
  bool clamped;  // true if m was reduced to binom(n+1, 2)

  static DRQuery make(int m, int n, int j);
};

// sqrt( binom(n,j) (m/n)^j / (binom(m,j) (j!)^2) ), via log-gamma
double dr_lower_bound(const DRQuery& q);
double dr_lower_bound(int m, int n, int j);

// closed form at m = n+1: sqrt( (n-j+1)(n+1)^{j-1} / (n^j (j!)^2) )
double dr_simplex_value(int n, int j);

struct MaxSimplex {
  double value;
  std::vector<int> subset;  // 0-based, lexicographically smallest maximizer
};

// exhaustive maximum of gram_simplex_volume over j-subsets
MaxSimplex max_simplex_volume(const IdentityDecomposition& d, int j);

struct DRWitness {
  IdentityDecomposition decomposition;
  double value;             // max simplex volume at j = n
  std::vector<int> subset;  // achieving index set
};

struct DrSearchOptions {
  std::uint64_t seed = 1;
  int restarts = 64;
  int iters = 5000;
  int threads = 1;
};

// Randomized minimax search: minimizes the max n-simplex volume over
// decompositions of I_n with m terms. Decompositions are parametrized by
// row-orthonormal n x m matrices, so feasibility is exact by
// construction; simulated annealing perturbs and re-projects. The result
// is an upper bound on DR(m, n, n). Deterministic for fixed options.
DRWitness dr_search(int m, int n, const DrSearchOptions& opts = {});

struct EquiangularReport {
  bool equiangular;   // all pairwise |cos| equal within 1e-9
  double common_cos;  // mean pairwise |cos| (only meaningful when true)
  double target;      // 1/sqrt(n+2)
};

EquiangularReport equiangular_check(const std::vector<Eigen::VectorXd>& dirs);

// exact stored configurations: "crosspolytope <n>", "regular_simplex <n>",
// "dr533", "icosahedron_lines"
DRWitness witness_library(const std::string& name);
std::vector<std::string> witness_names();

}  // namespace isodiam
