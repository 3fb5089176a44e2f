#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "isodiam/linalg.hpp"
#include "isodiam/polytope.hpp"

namespace isodiam {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

// The full verification battery behind `isodiam verify-paper`. Entirely
// self-contained: bodies are constructed programmatically and randomness
// is seeded. Runs in a few minutes on one core.
std::vector<CriterionResult> run_acceptance_suite(std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

// shared with the test suites
std::vector<std::pair<std::string, Polytope>> acceptance_fixtures();
Polytope random_symmetric_polytope(int n, linalg::Rng& rng);
Polytope random_polytope(int n, linalg::Rng& rng);

}  // namespace isodiam
