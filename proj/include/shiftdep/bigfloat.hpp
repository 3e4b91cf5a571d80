#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <utility>

namespace shiftdep {

/// Owning MPFR value with an explicit precision. Results of binary
/// operations take the larger operand precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(long x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(const mpz_class& x, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const mpq_class& x, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) : BigFloat(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

  /// round(x * 2^k).
  mpz_class scaled_round(long k) const {
    BigFloat t(prec());
    mpfr_mul_2si(t.v_, v_, k, MPFR_RNDN);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), t.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return op(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return op(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return op(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return op(a, b, mpfr_div); }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

  friend BigFloat abs(const BigFloat& a) { return un(a, mpfr_abs); }
  friend BigFloat sqrt(const BigFloat& a) { return un(a, mpfr_sqrt); }
  friend BigFloat log(const BigFloat& a) { return un(a, mpfr_log); }

 private:
  using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  static BigFloat op(const BigFloat& a, const BigFloat& b, BinFn fn) {
    BigFloat r(std::max(a.prec(), b.prec()));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat un(const BigFloat& a, UnFn fn) {
    BigFloat r(a.prec());
    fn(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

struct BigComplex {
  BigFloat re, im;

  BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  BigFloat norm2() const { return re * re + im * im; }
};

}  // namespace shiftdep
