#pragma once

#include <span>
#include <vector>

namespace nsf1d::solver {

/// Thomas solve of a symmetric tridiagonal system with main diagonal `diag`
/// (size n) and sub/super diagonal `off` (size n-1). Overwrites `x` with the
/// solution; `x` carries the right-hand side on entry. Throws SolverError on
/// a non-positive pivot (the system is expected SPD).
void solve_symmetric_tridiagonal(std::span<const double> diag, std::span<const double> off,
                                 std::span<double> x, std::vector<double>& scratch);

}  // namespace nsf1d::solver
