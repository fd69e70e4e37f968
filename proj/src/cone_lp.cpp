#include "cone_lp.hpp"

#include <cstddef>

namespace toricdiff::detail {

bool nonnegative_solution_exists(const std::vector<RationalRow>& a, const RationalRow& b) {
  const std::size_t m = a.size();
  if (m == 0) return true;
  const std::size_t n = a.front().size();
  const std::size_t width = n + m;  // original + artificial columns

  // Tableau rows: [A | I] with right-hand side, b made nonnegative.
  std::vector<RationalRow> t(m, RationalRow(width, mpq_class(0)));
  RationalRow rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? mpq_class(-a[i][j]) : a[i][j];
    t[i][n + i] = 1;
    rhs[i] = flip ? mpq_class(-b[i]) : b[i];
    basis[i] = n + i;
  }

  // Reduced costs of the phase-one objective (sum of artificials).
  RationalRow cost(width, mpq_class(0));
  mpq_class value = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    value -= rhs[i];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      mpq_class ratio = rhs[i] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one

    const mpq_class piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    rhs[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const mpq_class f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    const mpq_class f = cost[enter];
    for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    value -= f * rhs[leave];
    basis[leave] = enter;
  }
  return value == 0;
}

}  // namespace toricdiff::detail
