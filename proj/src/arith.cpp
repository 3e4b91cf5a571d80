#include "shiftdep/arith.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "shiftdep/errors.hpp"

namespace shiftdep {

int degree(const IntPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

int degree(const RatPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

void trim(IntPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }
void trim(RatPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }

mpz_class eval(const IntPoly& p, const mpz_class& n) {
  mpz_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * n + *it;
  return acc;
}

IntPoly parse_poly(std::string_view text) {
  IntPoly out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string tok(text.substr(pos, comma - pos));
    tok.erase(std::remove_if(tok.begin(), tok.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              tok.end());
    if (tok.empty()) throw ArgumentError("empty coefficient in polynomial '" +
                                         std::string(text) + "'");
    if (tok.front() == '+') tok.erase(0, 1);
    mpz_class c;
    if (c.set_str(tok, 10) != 0)
      throw ArgumentError("bad coefficient '" + tok + "'");
    out.push_back(c);
    pos = comma + 1;
  }
  if (out.empty()) throw ArgumentError("empty polynomial");
  return out;
}

std::string format_poly(const IntPoly& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += p[i].get_str();
  }
  return s;
}

std::string pretty_poly(const IntPoly& p, char var) {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(p); i >= 0; --i) {
    const mpz_class& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
mpz_class pollard_brent(const mpz_class& n, unsigned long c) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  mpz_class y = 2, x, g = 1, q = 1, ys, t;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](mpz_class& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        f(y);
        t = abs(x - y);
        q = (q * t) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
    if (r > (1UL << 26)) return 0;
  }
  if (g == n) {
    do {
      f(ys);
      t = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? mpz_class(0) : g;
}

bool split_into(const mpz_class& n, std::size_t max_digits,
                std::map<mpz_class, unsigned>& acc) {
  if (n == 1) return true;
  if (is_probable_prime(n)) {
    ++acc[n];
    return true;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 10) > max_digits) return false;
  for (unsigned long c = 1; c < 64; ++c) {
    mpz_class d = pollard_brent(n, c);
    if (d != 0 && d != 1 && d != n)
      return split_into(d, max_digits, acc) && split_into(n / d, max_digits, acc);
  }
  return false;
}

}  // namespace

std::optional<Factorization> factor_integer(const mpz_class& n,
                                            std::size_t max_digits) {
  if (n == 0) throw ArgumentError("factor_integer: zero has no factorization");
  mpz_class m = abs(n);
  std::map<mpz_class, unsigned> acc;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++acc[mpz_class(p)];
    }
  }
  // Wheel mod 30 trial division clears the small primes cheaply.
  static constexpr unsigned long kWheel[8] = {7, 11, 13, 17, 19, 23, 29, 31};
  for (unsigned long base = 0; base < 10000; base += 30) {
    for (unsigned long w : kWheel) {
      unsigned long p = base + w;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++acc[mpz_class(p)];
      }
    }
    if (m == 1 || mpz_cmp_ui(m.get_mpz_t(), (base + 31) * (base + 31)) < 0)
      break;
  }
  if (m != 1 && mpz_cmp_ui(m.get_mpz_t(), 10000UL * 10000UL) < 0) {
    ++acc[m];
    m = 1;
  }
  if (!split_into(m, max_digits, acc)) return std::nullopt;
  return Factorization(acc.begin(), acc.end());
}

std::optional<std::vector<mpz_class>> prime_divisors(const mpz_class& n,
                                                     std::size_t max_digits) {
  auto f = factor_integer(n, max_digits);
  if (!f) return std::nullopt;
  std::vector<mpz_class> out;
  for (auto& [p, e] : *f) out.push_back(p);
  return out;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  if (r != 1) throw DivisionError("invmod: not invertible");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::uint64_t mod_u64(const mpz_class& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace shiftdep
