#include "shiftdep/field.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "shiftdep/errors.hpp"
#include "shiftdep/poly_modp.hpp"

namespace shiftdep {

namespace {

int sign_of(const mpq_class& q) { return sgn(q); }

// Rational division with remainder; b nonzero.
void rat_divmod(const RatPoly& a, const RatPoly& b, RatPoly* q, RatPoly* r) {
  RatPoly rr = a;
  trim(rr);
  const int db = degree(b);
  if (db < 0) throw DivisionError("division by the zero polynomial");
  RatPoly qq(rr.size() > static_cast<std::size_t>(db)
                 ? rr.size() - static_cast<std::size_t>(db)
                 : 0);
  while (degree(rr) >= db) {
    const int dr = degree(rr);
    mpq_class c = rr[dr] / b[db];
    qq[dr - db] = c;
    for (int i = 0; i <= db; ++i) rr[dr - db + i] -= c * b[i];
    rr[dr] = 0;
    trim(rr);
  }
  if (q) {
    trim(qq);
    *q = std::move(qq);
  }
  if (r) *r = std::move(rr);
}

RatPoly to_rat(const IntPoly& p) {
  RatPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return out;
}

// mpz_class has no (mpz_class, int) swap-friendly determinant helper; this
// is the fraction-free Bareiss elimination on a square matrix.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Candidate integer roots of a monic polynomial: divisors of the constant.
std::vector<mpz_class> integer_roots(const IntPoly& f) {
  std::vector<mpz_class> roots;
  if (f[0] == 0) {
    roots.push_back(0);
    return roots;
  }
  auto fac = factor_integer(f[0], 60);
  if (!fac) throw UnsupportedInput("cannot factor constant term for root test");
  std::vector<mpz_class> divisors{1};
  for (auto& [p, e] : *fac) {
    std::size_t base = divisors.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  for (auto& dv : divisors) {
    if (eval(f, dv) == 0) roots.push_back(dv);
    if (eval(f, -dv) == 0) roots.push_back(-dv);
  }
  return roots;
}

// Subset sums of factor degrees, as a bitmask over [0, d].
std::vector<bool> degree_sums(const std::vector<int>& degs, int d) {
  std::vector<bool> can(static_cast<std::size_t>(d + 1), false);
  can[0] = true;
  for (int k : degs)
    for (int s = d; s >= k; --s)
      if (can[s - k]) can[s] = true;
  return can;
}

}  // namespace

bool FieldElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const mpq_class& c) { return c == 0; });
}

bool FieldElement::is_one() const {
  if (coeffs.empty() || coeffs[0] != 1) return false;
  return std::all_of(coeffs.begin() + 1, coeffs.end(),
                     [](const mpq_class& c) { return c == 0; });
}

std::string FieldElement::to_string(char var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const mpq_class& c = coeffs[i];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << '*';
    }
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

mpz_class resultant(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = a0, b = b0;
  trim(a);
  trim(b);
  const int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + (m - i)] = a[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + (n - i)] = b[i];
  return bareiss_det(std::move(s));
}

int count_real_roots(const IntPoly& f) {
  std::vector<RatPoly> seq;
  seq.push_back(to_rat(f));
  trim(seq[0]);
  RatPoly df;
  for (std::size_t i = 1; i < seq[0].size(); ++i)
    df.push_back(seq[0][i] * static_cast<long>(i));
  trim(df);
  if (df.empty()) return 0;
  seq.push_back(df);
  while (true) {
    RatPoly r;
    rat_divmod(seq[seq.size() - 2], seq.back(), nullptr, &r);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
      const int dg = degree(p);
      int s = sign_of(p[dg]);
      if (!at_plus && (dg % 2 == 1)) s = -s;
      if (s != 0) {
        if (last != 0 && s != last) ++count;
        last = s;
      }
    }
    return count;
  };
  return changes(false) - changes(true);
}

NumberField::NumberField(IntPoly f) : f_(std::move(f)) {
  trim(f_);
  d_ = shiftdep::degree(f_);
  if (d_ < 2) throw ArgumentError("number field needs degree >= 2, got " +
                                  std::to_string(d_));
  if (f_[d_] != 1)
    throw UnsupportedInput("only monic defining polynomials are supported; "
                           "leading coefficient is " + f_[d_].get_str());

  if (auto roots = integer_roots(f_); !roots.empty())
    throw ArgumentError("f = " + pretty_poly(f_) + " is reducible: factor x - (" +
                        roots.front().get_str() + ")");

  IntPoly df;
  for (int i = 1; i <= d_; ++i) df.push_back(f_[i] * i);
  mpz_class res = resultant(f_, df);
  disc_ = ((d_ * (d_ - 1) / 2) % 2 == 0) ? res : mpz_class(-res);
  if (disc_ == 0)
    throw ArgumentError("f = " + pretty_poly(f_) +
                        " has a repeated factor (zero discriminant)");

  if (d_ <= 3) {
    certified_ = true;
  } else {
    std::vector<bool> possible(static_cast<std::size_t>(d_ + 1), true);
    mpz_class pz = 2;
    for (int tries = 0; tries < 60 && !certified_; ++tries) {
      mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
      if (mpz_divisible_p(disc_.get_mpz_t(), pz.get_mpz_t())) continue;
      const std::uint64_t p = pz.get_ui();
      auto can = degree_sums(modp::factor_degrees(modp::reduce(f_, p), p), d_);
      for (int k = 1; k < d_; ++k) possible[k] = possible[k] && can[k];
      certified_ = std::none_of(possible.begin() + 1, possible.end() - 1,
                                [](bool b) { return b; });
    }
  }

  norm_.resize(f_.size());
  for (int i = 0; i <= d_; ++i)
    norm_[i] = ((d_ + i) % 2 == 0) ? f_[i] : mpz_class(-f_[i]);

  r1_ = count_real_roots(f_);
  r2_ = (d_ - r1_) / 2;

  auto primes = prime_divisors(disc_, 80);
  if (!primes) throw UnsupportedInput("cannot factor disc(f) = " + disc_.get_str());
  exceptional_ = std::move(*primes);
}

bool NumberField::is_exceptional(std::uint64_t p) const {
  return mpz_divisible_ui_p(disc_.get_mpz_t(), p) != 0;
}

FieldElement NumberField::zero() const {
  return FieldElement{std::vector<mpq_class>(static_cast<std::size_t>(d_), 0)};
}

FieldElement NumberField::one() const {
  FieldElement e = zero();
  e.coeffs[0] = 1;
  return e;
}

FieldElement NumberField::generator() const {
  FieldElement e = zero();
  e.coeffs[1] = 1;
  return e;
}

FieldElement NumberField::shift(const mpz_class& n) const {
  FieldElement e = generator();
  e.coeffs[0] = n;
  return e;
}

FieldElement NumberField::element(std::vector<mpq_class> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(d_))
    throw ArgumentError("field element needs exactly " + std::to_string(d_) +
                        " coefficients, got " + std::to_string(coeffs.size()));
  for (auto& c : coeffs) c.canonicalize();
  return FieldElement{std::move(coeffs)};
}

NumberField nf_new(const IntPoly& f) { return NumberField(f); }

namespace {

void check_len(const NumberField& K, const FieldElement& a) {
  if (a.coeffs.size() != static_cast<std::size_t>(K.degree()))
    throw ArgumentError("field element has wrong length");
}

template <class T>
std::vector<T> reduce_mod_f(const NumberField& K, std::vector<T> prod) {
  const int d = K.degree();
  const IntPoly& f = K.f();
  for (int k = static_cast<int>(prod.size()) - 1; k >= d; --k) {
    if (prod[k] == 0) continue;
    const T c = prod[k];
    for (int i = 0; i < d; ++i) prod[k - d + i] -= c * f[i];
    prod[k] = 0;
  }
  prod.resize(static_cast<std::size_t>(d));
  return prod;
}

}  // namespace

FieldElement fe_add(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  check_len(K, a);
  check_len(K, b);
  FieldElement out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

FieldElement fe_sub(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  check_len(K, a);
  check_len(K, b);
  FieldElement out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

FieldElement fe_mul(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  check_len(K, a);
  check_len(K, b);
  const std::size_t d = static_cast<std::size_t>(K.degree());
  std::vector<mpq_class> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return FieldElement{reduce_mod_f(K, std::move(prod))};
}

FieldElement fe_inv(const NumberField& K, const FieldElement& a) {
  check_len(K, a);
  if (a.is_zero()) throw DivisionError("inverse of zero field element");
  // Extended Euclid on (f, a): track s with s*a = r (mod f).
  RatPoly r0 = to_rat(K.f()), r1 = a.coeffs;
  trim(r1);
  RatPoly s0, s1{1};
  while (degree(r1) > 0) {
    RatPoly q, r;
    rat_divmod(r0, r1, &q, &r);
    RatPoly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    RatPoly s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      if (i < s0.size()) s2[i] += s0[i];
      if (i < qs.size()) s2[i] -= qs[i];
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant because f is irreducible.
  const mpq_class c = r1[0];
  std::vector<mpq_class> out(static_cast<std::size_t>(K.degree()), 0);
  RatPoly red;
  rat_divmod(s1, to_rat(K.f()), nullptr, &red);
  for (std::size_t i = 0; i < red.size(); ++i) out[i] = red[i] / c;
  return FieldElement{std::move(out)};
}

FieldElement fe_pow(const NumberField& K, const FieldElement& a, long k) {
  check_len(K, a);
  if (a.is_zero()) {
    if (k <= 0) throw DivisionError("non-positive power of zero field element");
    return K.zero();
  }
  if (k == 0) return K.one();
  FieldElement base = k < 0 ? fe_inv(K, a) : a;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1UL
                          : static_cast<unsigned long>(k);
  FieldElement result = K.one();
  while (e) {
    if (e & 1) result = fe_mul(K, result, base);
    e >>= 1;
    if (e) base = fe_mul(K, base, base);
  }
  return result;
}

mpq_class fe_norm(const NumberField& K, const FieldElement& a) {
  check_len(K, a);
  mpz_class den = 1;
  for (const auto& c : a.coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntPoly num(a.coeffs.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    mpq_class t = a.coeffs[i] * den;
    num[i] = t.get_num();
  }
  mpz_class res = resultant(K.f(), num);
  mpz_class dd;
  mpz_pow_ui(dd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(K.degree()));
  mpq_class out(res, dd);
  out.canonicalize();
  return out;
}

IntPoly zmul(const NumberField& K, const IntPoly& a, const IntPoly& b) {
  const std::size_t d = static_cast<std::size_t>(K.degree());
  std::vector<mpz_class> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return reduce_mod_f(K, std::move(prod));
}

IntPoly zpow(const NumberField& K, const IntPoly& a, unsigned long k) {
  IntPoly result(static_cast<std::size_t>(K.degree()), 0);
  result[0] = 1;
  IntPoly base = a;
  while (k) {
    if (k & 1) result = zmul(K, result, base);
    k >>= 1;
    if (k) base = zmul(K, base, base);
  }
  return result;
}

}  // namespace shiftdep
