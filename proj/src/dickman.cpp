#include "shiftdep/dickman.hpp"

#include <cmath>
#include <string>

#include "shiftdep/errors.hpp"

namespace shiftdep {

namespace {

constexpr double kInitialStep = 1.0 / 1024.0;
constexpr int kMaxHalvings = 8;

double rho_closed(double u) { return u <= 1.0 ? 1.0 : 1.0 - std::log(u); }

// Grid of spacing 1/per_unit covering [0, u_max]; per_unit is even.
std::vector<double> integrate(double u_max, long per_unit) {
  const double h = 1.0 / static_cast<double>(per_unit);
  const long n = static_cast<long>(std::ceil(u_max * per_unit - 1e-9));
  std::vector<double> v(static_cast<std::size_t>(n + 1));
  const long two = 2 * per_unit;
  for (long i = 0; i <= n && i <= two; ++i) v[i] = rho_closed(i * h);
  if (n <= two) return v;

  // Integrand g(t) = rho(t-1)/t; t-1 is always an earlier node.
  auto g = [&](long i) { return v[i - per_unit] / (i * h); };

  // First step past u=2 uses single-interval Simpson; the midpoint delay
  // value lies in [1,2] where the closed form applies.
  {
    const long i = two + 1;
    const double tm = (i - 0.5) * h;
    const double gm = rho_closed(tm - 1.0) / tm;
    v[i] = v[i - 1] - h / 6.0 * (g(i - 1) + 4.0 * gm + g(i));
  }
  for (long i = two + 2; i <= n; ++i)
    v[i] = v[i - 2] - h / 3.0 * (g(i - 2) + 4.0 * g(i - 1) + g(i));
  return v;
}

}  // namespace

RhoGrid rho_build(double u_max, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("rho_build: tol must be positive");
  if (!(u_max >= 1.0))
    throw ArgumentError("rho_build: u_max must be >= 1, got " +
                        std::to_string(u_max));
  long per_unit = static_cast<long>(1.0 / kInitialStep);
  std::vector<double> coarse = integrate(u_max, per_unit);
  for (int k = 0; k < kMaxHalvings; ++k) {
    std::vector<double> fine = integrate(u_max, 2 * per_unit);
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.size() && 2 * i < fine.size(); ++i)
      diff = std::max(diff, std::fabs(coarse[i] - fine[2 * i]));
    coarse = std::move(fine);
    per_unit *= 2;
    if (diff < tol / 10.0) break;
  }
  RhoGrid grid;
  grid.step = 1.0 / static_cast<double>(per_unit);
  grid.u_max = u_max;
  grid.tol = tol;
  grid.values = std::move(coarse);
  return grid;
}

double rho_eval(const RhoGrid& grid, double u) {
  if (std::isnan(u) || u < 0.0)
    throw ArgumentError("rho_eval: u must be non-negative");
  if (u > grid.u_max + 1e-12)
    throw RangeError("rho_eval: u = " + std::to_string(u) +
                     " beyond grid u_max = " + std::to_string(grid.u_max));
  if (u <= 2.0) return rho_closed(u);

  const double h = grid.step;
  const long per_unit = std::lround(1.0 / h);
  const auto last = static_cast<long>(grid.values.size()) - 1;
  long i = static_cast<long>(std::floor(u / h));
  if (i >= last) i = last - 1;
  const double u0 = i * h, u1 = (i + 1) * h;
  const double y0 = grid.values[i], y1 = grid.values[i + 1];
  // rho'(u) = -rho(u-1)/u, read off the grid one unit back.
  const double m0 = -grid.values[i - per_unit] / u0;
  const double m1 = -grid.values[i + 1 - per_unit] / u1;
  const double s = (u - u0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
}

}  // namespace shiftdep
