#include "shiftdep/embedding.hpp"

#include <algorithm>

#include "shiftdep/errors.hpp"

namespace shiftdep {

namespace {

BigComplex horner(const IntPoly& f, const BigComplex& z, long prec) {
  BigComplex acc(prec);
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * z;
    acc.re += BigFloat(*it, prec);
  }
  return acc;
}

}  // namespace

Embedding::Embedding(const NumberField& K, long prec_bits)
    : prec_(prec_bits), r1_(K.r1()) {
  const IntPoly& f = K.f();
  const int d = K.degree();
  const long work = prec_bits + 32;

  // Durand-Kerner from the usual spiral start, scaled by a Cauchy bound.
  mpz_class bound = 1;
  for (int i = 0; i < d; ++i) bound = std::max(bound, mpz_class(abs(f[i])));
  BigFloat radius(mpz_class(bound + 1), work);
  BigComplex seed(BigFloat(mpq_class(2, 5), work), BigFloat(mpq_class(9, 10), work));
  std::vector<BigComplex> z;
  BigComplex pw(BigFloat(1L, work), BigFloat(0L, work));
  for (int k = 0; k < d; ++k) {
    pw = pw * seed;
    z.push_back(BigComplex(pw.re * radius, pw.im * radius));
  }
  BigFloat tiny(work);
  mpfr_set_ui_2exp(tiny.get(), 1, -(work - 8), MPFR_RNDN);
  for (int iter = 0; iter < 5000; ++iter) {
    BigFloat worst(work);
    for (int i = 0; i < d; ++i) {
      BigComplex den(BigFloat(1L, work), BigFloat(0L, work));
      for (int j = 0; j < d; ++j)
        if (j != i) den = den * (z[i] - z[j]);
      BigComplex delta = horner(f, z[i], work) / den;
      z[i] = z[i] - delta;
      BigFloat size = delta.norm2();
      if (size > worst) worst = size;
    }
    if (worst < tiny * tiny) break;
  }

  std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
    return abs(a.im) < abs(b.im);
  });
  std::vector<BigComplex> real(z.begin(), z.begin() + r1_);
  for (auto& r : real) r.im = BigFloat(0L, work);
  std::sort(real.begin(), real.end(),
            [](const BigComplex& a, const BigComplex& b) { return a.re < b.re; });
  roots_ = std::move(real);
  for (int i = r1_; i < d; ++i)
    if (z[i].im.sign() > 0) roots_.push_back(z[i]);
  if (static_cast<int>(roots_.size()) != r1_ + K.r2())
    throw PrecisionError("root isolation failed to separate conjugate pairs");
}

std::vector<BigFloat> Embedding::log_abs_shift(const mpz_class& n) const {
  std::vector<BigFloat> out;
  BigFloat shift(n, prec_ + 32);
  for (int i = 0; i < places(); ++i) {
    const BigComplex& r = roots_[static_cast<std::size_t>(i)];
    if (i < r1_) {
      out.push_back(log(abs(r.re + shift)));
    } else {
      BigFloat re = r.re + shift;
      BigFloat n2 = re * re + r.im * r.im;
      BigFloat half(mpq_class(1, 2), prec_ + 32);
      out.push_back(log(n2) * half);
    }
  }
  return out;
}

std::vector<BigFloat> Embedding::log_abs(const FieldElement& a) const {
  std::vector<BigFloat> out;
  const long w = prec_ + 32;
  for (int i = 0; i < places(); ++i) {
    const BigComplex& r = roots_[static_cast<std::size_t>(i)];
    BigComplex acc(w);
    for (auto it = a.coeffs.rbegin(); it != a.coeffs.rend(); ++it) {
      acc = acc * r;
      acc.re += BigFloat(*it, w);
    }
    BigFloat half(mpq_class(1, 2), w);
    out.push_back(log(acc.norm2()) * half);
  }
  return out;
}

}  // namespace shiftdep
