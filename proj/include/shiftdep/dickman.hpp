#pragma once

#include <vector>

namespace shiftdep {

/// Tabulated Dickman function on the uniform grid u_i = i * step.
///
/// The table is built once and never mutated, so a single grid may be
/// shared by concurrent readers.
struct RhoGrid {
  double step = 0.0;
  double u_max = 0.0;
  double tol = 0.0;
  std::vector<double> values;
};

/// Builds rho on [0, u_max] to absolute accuracy tol.
///
/// rho = 1 on [0,1] and 1 - log u on [1,2] exactly. Past u = 2 the delay
/// integral rho(u) = rho(a) - int_a^u rho(t-1)/t dt is stepped with
/// composite Simpson rules; the step starts at 1/1024 and is halved until
/// two consecutive grids agree to tol/10 at every shared node.
RhoGrid rho_build(double u_max, double tol);

/// rho(u) for 0 <= u <= grid.u_max. Closed forms on [0,2]; elsewhere cubic
/// Hermite interpolation using the delay equation for the node slopes.
double rho_eval(const RhoGrid& grid, double u);

}  // namespace shiftdep
