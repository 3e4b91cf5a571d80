#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "shiftdep/arith.hpp"
#include "shiftdep/dickman.hpp"
#include "shiftdep/field.hpp"

namespace shiftdep {

std::vector<std::uint32_t> primes_up_to(std::uint64_t y);

/// Roots of P in [0, p), ascending. Direct scan below 2^16, equal-degree
/// splitting above; every root is re-checked by evaluation either way.
std::vector<std::uint32_t> poly_roots_mod_p(const IntPoly& P, std::uint64_t p);

/// Primes up to y with the roots of P modulo each of them.
struct FactorBasePrimes {
  IntPoly poly;
  std::uint64_t y = 0;
  std::vector<std::uint32_t> primes;
  std::vector<std::vector<std::uint32_t>> roots;  // parallel to primes

  /// Roots for prime p, or nullptr when p is not in the base.
  const std::vector<std::uint32_t>* roots_of(std::uint64_t p) const;
  bool operator==(const FactorBasePrimes&) const = default;
};

FactorBasePrimes build_factor_base(const IntPoly& P, std::uint64_t y);

/// Factorization of P(n) over the primes <= y, with the leftover cofactor.
///
/// sign * prod p^e * cofactor == P(n). A record is smooth iff the
/// cofactor is 1; P(n) = +-1 is smooth with no factors. The linear bypass
/// P(n) = n yields a zero value at n = 0, carried with cofactor 0 and
/// is_smooth false.
struct SmoothRecord {
  std::int64_t n = 0;
  mpz_class value;  // |P(n)|
  int sign = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (p, e), p ascending
  mpz_class cofactor;
  bool is_smooth = false;
  mpz_class largest_prime;      // P+(|P(n)|), with P+(1) = 1
  bool largest_known = true;    // false if the cofactor was left unfactored
};

struct SieveOptions {
  unsigned threads = 1;
  /// Factor non-smooth cofactors to report P+ exactly.
  bool resolve_largest_prime = true;
  std::size_t cofactor_digit_cap = 40;
};

/// One record per 0 <= n < x, sieved with the given factor base.
std::vector<SmoothRecord> sieve_smooth(const FactorBasePrimes& fb, std::int64_t x,
                                       const SieveOptions& opts = {});
/// Sieves the norm polynomial of K.
std::vector<SmoothRecord> sieve_smooth(const NumberField& K, std::int64_t x,
                                       std::uint64_t y, const SieveOptions& opts = {});
/// Degree-one bypass: P(n) = n. Only for oracle tests and the rational case.
std::vector<SmoothRecord> sieve_smooth_linear(std::int64_t x, std::uint64_t y,
                                              const SieveOptions& opts = {});

/// Smooth records with n >= range_start. Psi_P(x, y) uses range_start = 1.
std::int64_t psi_count(const std::vector<SmoothRecord>& records,
                       std::int64_t range_start);

IntPoly linear_bypass_poly();

struct ConjectureRow {
  std::int64_t x = 0;
  std::uint64_t y = 0;
  std::int64_t psi = 0;
  double u = 0.0;           // log x / log y
  double rho_ratio = 0.0;   // psi / (x * rho(d u))
  double growth = 0.0;      // psi * log y / y
};

/// One row per (x, y) cell of the grid product. The polynomial is sieved
/// once at the largest x and y; smaller cells are read off the records.
std::vector<ConjectureRow> conjecture_tables(const IntPoly& P, int degree,
                                             const std::vector<std::int64_t>& x_grid,
                                             const std::vector<std::uint64_t>& y_grid,
                                             const RhoGrid& rho,
                                             const SieveOptions& opts = {});
std::vector<ConjectureRow> conjecture_tables(const NumberField& K,
                                             const std::vector<std::int64_t>& x_grid,
                                             const std::vector<std::uint64_t>& y_grid,
                                             const RhoGrid& rho,
                                             const SieveOptions& opts = {});

}  // namespace shiftdep
