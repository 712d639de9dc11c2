#pragma once

// Test-only oracle: decides conic membership x in cone(g_1..g_N) by exact
// phase-1 simplex on {G l = x, l >= 0}.  Independent of the cone module's
// facet machinery on purpose; the two must agree.

#include <cstddef>
#include <vector>

#include "rootcone/linalg.hpp"
#include "rootcone/numeric.hpp"

namespace rootcone::testing {

inline bool conic_member(const std::vector<Vec>& gens, const Vec& x) {
  const std::size_t m = static_cast<std::size_t>(x.size());
  const std::size_t nstruct = gens.size();
  const std::size_t ncols = nstruct + m;

  // Tableau rows: [structural | artificial | rhs], artificial basis start.
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(ncols + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nstruct; ++j) t[i][j] = gens[j][static_cast<int>(i)];
    t[i][ncols] = x[static_cast<int>(i)];
    if (sgn(t[i][ncols]) < 0)
      for (auto& q : t[i]) q = -q;
    t[i][nstruct + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = nstruct + i;

  // Reduced-cost row for min(sum of artificials): z_j = sum_i t[i][j] over
  // structural columns; artificial columns start at cost 0 in reduced form.
  std::vector<Rat> z(ncols + 1);
  for (std::size_t j = 0; j <= ncols; ++j) {
    Rat acc;
    for (std::size_t i = 0; i < m; ++i) acc += t[i][j];
    z[j] = acc;
  }
  for (std::size_t i = 0; i < m; ++i) z[nstruct + i] = 0;

  // Bland's rule; exact arithmetic, so termination is guaranteed.
  for (;;) {
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols; ++j)
      if (sgn(z[j]) > 0) {
        enter = j;
        break;
      }
    if (enter == ncols) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rat ratio = t[i][ncols] / t[i][enter];
      bool take = leave == m || ratio < best ||
                  (ratio == best && basis[i] < basis[leave]);
      if (take) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded; cannot happen with objective >= 0
    Rat piv = t[leave][enter];
    for (auto& q : t[leave]) q /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (sgn(z[enter]) != 0) {
      Rat f = z[enter];
      for (std::size_t j = 0; j <= ncols; ++j) z[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return sgn(z[ncols]) == 0;
}

}  // namespace rootcone::testing
