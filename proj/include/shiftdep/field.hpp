#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "shiftdep/arith.hpp"

namespace shiftdep {

/// An element c_0 + c_1 a + ... + c_{d-1} a^{d-1} of Q(a), coefficients in
/// lowest terms. Only meaningful together with the NumberField it came from.
struct FieldElement {
  std::vector<mpq_class> coeffs;

  bool operator==(const FieldElement& o) const { return coeffs == o.coeffs; }
  bool is_zero() const;
  bool is_one() const;
  std::string to_string(char var = 'a') const;
};

/// K = Q[x]/(f) for a monic irreducible f of degree d >= 2, with the
/// invariants the sieve and relation code need: discriminant, norm
/// polynomial P(n) = Norm(n + a) = (-1)^d f(-n), signature and unit rank.
///
/// Irreducibility is proven for d <= 3 (rational root test). For d >= 4 it is
/// proven only when the degree patterns of f modulo a few small primes leave
/// no room for a factor; otherwise `irreducibility_certified()` is false and
/// the caller vouches for f.
class NumberField {
 public:
  explicit NumberField(IntPoly f);

  const IntPoly& f() const { return f_; }
  int degree() const { return d_; }
  const mpz_class& disc() const { return disc_; }
  const IntPoly& norm_poly() const { return norm_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  int unit_rank() const { return r1_ + r2_ - 1; }
  /// Primes dividing disc(f), ascending.
  const std::vector<mpz_class>& exceptional_primes() const { return exceptional_; }
  bool is_exceptional(std::uint64_t p) const;
  bool irreducibility_certified() const { return certified_; }

  mpz_class norm_of_shift(const mpz_class& n) const { return eval(norm_, n); }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const;
  /// n + a.
  FieldElement shift(const mpz_class& n) const;
  FieldElement element(std::vector<mpq_class> coeffs) const;

 private:
  IntPoly f_;
  int d_ = 0;
  mpz_class disc_;
  IntPoly norm_;
  int r1_ = 0;
  int r2_ = 0;
  std::vector<mpz_class> exceptional_;
  bool certified_ = false;
};

NumberField nf_new(const IntPoly& f);

FieldElement fe_add(const NumberField& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const NumberField& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const NumberField& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_inv(const NumberField& K, const FieldElement& a);
FieldElement fe_pow(const NumberField& K, const FieldElement& a, long k);
mpq_class fe_norm(const NumberField& K, const FieldElement& a);

/// Product in Z[a] of integral elements (length-d integer vectors).
IntPoly zmul(const NumberField& K, const IntPoly& a, const IntPoly& b);
IntPoly zpow(const NumberField& K, const IntPoly& a, unsigned long k);

/// Resultant of two integer polynomials (Sylvester determinant, Bareiss).
mpz_class resultant(const IntPoly& a, const IntPoly& b);

/// Number of distinct real roots of a squarefree integer polynomial.
int count_real_roots(const IntPoly& f);

}  // namespace shiftdep
