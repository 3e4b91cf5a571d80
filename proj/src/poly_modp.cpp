#include "shiftdep/poly_modp.hpp"

#include <algorithm>
#include <random>

#include "shiftdep/errors.hpp"

namespace shiftdep::modp {

namespace {

void strip(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

}  // namespace

Poly reduce(const IntPoly& f, std::uint64_t p) {
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mod_u64(f[i], p);
  strip(out);
  return out;
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  strip(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    out[i] = (x + p - y) % p;
  }
  strip(out);
  return out;
}

namespace {

void divide(const Poly& a, const Poly& b, std::uint64_t p, Poly* q, Poly* r) {
  if (b.empty()) throw DivisionError("polynomial division by zero mod p");
  Poly rr = a;
  strip(rr);
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv_lead = invmod(b.back(), p);
  Poly qq(rr.size() >= b.size() ? rr.size() - db : 0, 0);
  while (rr.size() >= b.size()) {
    std::size_t shift = rr.size() - b.size();
    std::uint64_t c = mulmod(rr.back(), inv_lead, p);
    qq[shift] = c;
    for (std::size_t i = 0; i <= db; ++i)
      rr[shift + i] = (rr[shift + i] + p - mulmod(c, b[i], p)) % p;
    strip(rr);
  }
  if (q) {
    strip(qq);
    *q = std::move(qq);
  }
  if (r) *r = std::move(rr);
}

}  // namespace

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r;
  divide(a, b, p, nullptr, &r);
  return r;
}

Poly quot(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly q;
  divide(a, b, p, &q, nullptr);
  return q;
}

Poly make_monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t inv = invmod(a.back(), p);
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mulmod(a[i], inv, p);
  return out;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1 % p};
  strip(result);
  Poly b = rem(base, m, p);
  while (e) {
    if (e & 1) result = rem(mul(result, b, p), m, p);
    b = rem(mul(b, b, p), m, p);
    e >>= 1;
  }
  return result;
}

Poly derivative(const Poly& f, std::uint64_t p) {
  if (f.size() <= 1) return {};
  Poly out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = mulmod(f[i], i % p, p);
  strip(out);
  return out;
}

std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

std::vector<std::uint64_t> roots_exhaustive(const Poly& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  if (f.empty()) throw DegenerateInput("polynomial vanishes identically mod p");
  for (std::uint64_t r = 0; r < p; ++r)
    if (eval(f, r, p) == 0) out.push_back(r);
  return out;
}

namespace {

void split_linear(const Poly& g, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<std::uint64_t>& out) {
  const int d = degree(g);
  if (d <= 0) return;
  if (d == 1) {
    // monic x + c
    out.push_back((p - g[0]) % p);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
  for (;;) {
    Poly shifted{pick(rng), 1};
    Poly h = powmod(shifted, (p - 1) / 2, g, p);
    h = sub(h, Poly{1}, p);
    Poly a = gcd(g, h, p);
    if (degree(a) > 0 && degree(a) < d) {
      split_linear(a, p, rng, out);
      split_linear(make_monic(quot(g, a, p), p), p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> roots_splitting(const Poly& f, std::uint64_t p) {
  if (f.empty()) throw DegenerateInput("polynomial vanishes identically mod p");
  if (p < 3) return roots_exhaustive(f, p);
  Poly fm = make_monic(f, p);
  Poly xp = powmod(Poly{0, 1}, p, fm, p);
  Poly g = gcd(fm, sub(xp, Poly{0, 1}, p), p);
  std::vector<std::uint64_t> out;
  std::mt19937_64 rng(0x5eedULL ^ p);
  split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> factor_degrees(const Poly& f, std::uint64_t p) {
  std::vector<int> degs;
  Poly rest = make_monic(f, p);
  Poly x{0, 1};
  Poly xq = x;
  for (int k = 1; 2 * k <= degree(rest); ++k) {
    xq = powmod(xq, p, rest, p);
    Poly g = gcd(rest, sub(xq, x, p), p);
    int dg = degree(g);
    for (int i = 0; i < dg / k; ++i) degs.push_back(k);
    if (dg > 0) {
      rest = make_monic(quot(rest, g, p), p);
      xq = rem(xq, rest, p);
    }
  }
  if (degree(rest) > 0) degs.push_back(degree(rest));
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace shiftdep::modp
