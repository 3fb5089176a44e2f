#include <iostream>

#include "isodiam/acceptance.hpp"

int main() {
  const auto results = isodiam::run_acceptance_suite(&std::cout);
  const bool ok = isodiam::all_passed(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}
