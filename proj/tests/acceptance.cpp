// One line per end-to-end criterion; exit status is nonzero if any fails.
// All comparisons are exact, so there are no tolerances to pin.

#include <iostream>

#include "toricdiff/verification.hpp"

int main() {
  using namespace toricdiff::verify;
  const GridOptions opts;  // n in {2,3,4}, l in -4..4, degree bound 4, 200 random instances
  bool all = true;
  for (const auto& c : run_all(opts)) {
    std::cout << summary_line(c) << std::endl;
    all = all && c.passed;
  }
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? 0 : 1;
}
