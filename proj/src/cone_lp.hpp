#pragma once

// Exact feasibility test for {x >= 0 : A x = b} over the rationals
// (phase one of the simplex method, Bland's rule).

#include <vector>

#include <gmpxx.h>

namespace toricdiff::detail {

using RationalRow = std::vector<mpq_class>;

bool nonnegative_solution_exists(const std::vector<RationalRow>& a, const RationalRow& b);

}  // namespace toricdiff::detail
