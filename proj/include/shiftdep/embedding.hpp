#pragma once

#include <vector>

#include "shiftdep/bigfloat.hpp"
#include "shiftdep/field.hpp"

namespace shiftdep {

/// The archimedean places of K at a fixed binary precision: r1 real roots
/// of f (ascending) followed by one root from each complex-conjugate pair
/// (positive imaginary part).
class Embedding {
 public:
  Embedding(const NumberField& K, long prec_bits);

  long prec() const { return prec_; }
  int places() const { return static_cast<int>(roots_.size()); }
  const BigComplex& root(int i) const { return roots_[static_cast<std::size_t>(i)]; }

  /// Logarithmic embedding of n + a: log|sigma_i(n + a)| per place.
  std::vector<BigFloat> log_abs_shift(const mpz_class& n) const;
  /// Same for an arbitrary element (used for diagnostics and tests).
  std::vector<BigFloat> log_abs(const FieldElement& a) const;

 private:
  long prec_;
  int r1_;
  std::vector<BigComplex> roots_;
};

}  // namespace shiftdep
