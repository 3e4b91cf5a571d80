#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftdep/errors.hpp"
#include "shiftdep/field.hpp"
#include "shiftdep/sieve.hpp"

using namespace shiftdep;

namespace {

IntPoly P(std::initializer_list<long> c) {
  IntPoly p;
  for (long v : c) p.emplace_back(v);
  return p;
}

std::vector<std::uint32_t> roots_naive(const IntPoly& f, std::uint64_t p) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t r = 0; r < p; ++r) {
    mpz_class v = oracle::eval(f, static_cast<unsigned long>(r)) % static_cast<unsigned long>(p);
    if (v == 0) out.push_back(static_cast<std::uint32_t>(r));
  }
  return out;
}

/// Compares every record with trial division of P(n); returns mismatches.
int compare_with_trial_division(const std::vector<SmoothRecord>& recs, const IntPoly& norm,
                                std::uint64_t y) {
  int bad = 0;
  for (const auto& r : recs) {
    mpz_class v = oracle::eval(norm, r.n);
    if (v == 0) {  // only the linear bypass at n = 0
      if (r.is_smooth || !r.factors.empty() || r.cofactor != 0) ++bad;
      continue;
    }
    auto tf = oracle::trial_factor(v);
    bool smooth = tf.empty() || tf.rbegin()->first <= y;
    std::map<std::uint64_t, std::uint32_t> below;
    for (auto [p, e] : tf)
      if (p <= y) below[p] = e;
    std::map<std::uint64_t, std::uint32_t> got;
    for (auto [p, e] : r.factors) got[p] = e;
    if (r.is_smooth != smooth || got != below || r.value != abs(v)) {
      ++bad;
      continue;
    }
    if (r.is_smooth) {
      mpz_class lp = tf.empty() ? mpz_class(1) : mpz_class(static_cast<unsigned long>(tf.rbegin()->first));
      if (r.largest_known && r.largest_prime != lp) ++bad;
    }
  }
  return bad;
}

}  // namespace

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(primes_up_to(2) == std::vector<std::uint32_t>{2});
  auto p100 = primes_up_to(100);
  CHECK(p100.size() == 25);
  CHECK(p100.back() == 97);
  auto big = primes_up_to(20000);
  std::vector<std::uint32_t> naive;
  for (std::uint32_t n = 2; n <= 20000; ++n)
    if (oracle::is_prime_naive(n)) naive.push_back(n);
  CHECK(big == naive);
  CHECK(primes_up_to(1000000).size() == 78498);
  CHECK_THROWS_AS(primes_up_to(1), ArgumentError);
}

TEST_CASE("roots modulo p") {
  CHECK(poly_roots_mod_p(P({1, -1, 1}), 7) == std::vector<std::uint32_t>{3, 5});
  CHECK(poly_roots_mod_p(P({1, -1, 1}), 5).empty());
  CHECK(poly_roots_mod_p(P({-2, 0, 1}), 7) == std::vector<std::uint32_t>{3, 4});
  CHECK_THROWS_AS(poly_roots_mod_p(P({7, 14, 7}), 7), DegenerateInput);
  // Leading coefficient vanishing mod p is allowed; the degree drops.
  CHECK(poly_roots_mod_p(P({1, 1, 3}), 3) == std::vector<std::uint32_t>{2});
}

TEST_CASE("roots agree with an exhaustive scan on both sides of the scan limit") {
  const std::vector<IntPoly> polys = {P({1, -1, 1}), P({-2, 0, 1}), P({-2, 1, -1, 1}),
                                      P({-2, 0, 0, 0, 1}), P({3, 1, 0, 2, 0, -1})};
  const std::vector<std::uint64_t> primes = {2, 3, 5, 97, 65519, 65521, 65537, 65539, 65543,
                                             100003, 1000003};
  for (const auto& f : polys)
    for (auto p : primes) {
      CHECK(poly_roots_mod_p(f, p) == roots_naive(f, p));
    }
}

TEST_CASE("factor base") {
  NumberField K(P({1, 1, 1}));
  auto fb = build_factor_base(K.norm_poly(), 7);
  CHECK(fb.primes == std::vector<std::uint32_t>{2, 3, 5, 7});
  REQUIRE(fb.roots_of(7) != nullptr);
  CHECK(*fb.roots_of(7) == std::vector<std::uint32_t>{3, 5});
  CHECK(fb.roots_of(3)->size() == 1);  // ramified: n = 2
  CHECK(fb.roots_of(2)->empty());
  CHECK(fb.roots_of(11) == nullptr);
  CHECK(fb.roots_of(4) == nullptr);
}

TEST_CASE("worked sieve examples") {
  NumberField e(P({1, 1, 1}));
  auto recs = sieve_smooth(e, 7, 7);
  REQUIRE(recs.size() == 7);
  std::vector<std::int64_t> smooth;
  for (const auto& r : recs)
    if (r.is_smooth && r.n >= 1) smooth.push_back(r.n);
  CHECK(smooth == std::vector<std::int64_t>{1, 2, 3, 5});
  CHECK(psi_count(recs, 1) == 4);
  CHECK(psi_count(recs, 0) == 5);
  CHECK_FALSE(recs[4].is_smooth);
  CHECK(recs[4].cofactor == 13);
  CHECK(recs[6].largest_prime == 31);
  CHECK(recs[5].factors == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {7, 1}});

  NumberField q(P({-2, 0, 1}));
  auto qr = sieve_smooth(q, 3, 2);
  REQUIRE(qr.size() == 3);
  for (const auto& r : qr) CHECK(r.is_smooth);
  CHECK(qr[0].sign == -1);
  CHECK(qr[0].value == 2);
  CHECK(qr[1].sign == -1);
  CHECK(qr[1].value == 1);
  CHECK(qr[1].largest_prime == 1);
  CHECK(qr[2].value == 2);

  // Ψ(10, 3) for P(n) = n
  auto lin = sieve_smooth_linear(10, 3);
  CHECK(psi_count(lin, 1) == 7);
  CHECK_FALSE(lin[0].is_smooth);
  CHECK(lin[0].value == 0);
  CHECK(psi_count(sieve_smooth_linear(2, 2), 1) == 1);
  CHECK(psi_count(sieve_smooth(e, 2, 2), 1) == 1);
}

TEST_CASE("y beyond every value makes all records smooth") {
  NumberField K(P({-2, 0, 1}));
  auto recs = sieve_smooth(K, 30, 900);
  for (const auto& r : recs) CHECK(r.is_smooth);
}

TEST_CASE("sieve equals trial division") {
  struct Case {
    IntPoly f;
    std::int64_t x;
    std::uint64_t y;
  };
  const std::vector<Case> cases = {{P({1, 1, 1}), 2000, 500},  {P({-2, 0, 1}), 2000, 500},
                                   {P({2, 1, 1, 1}), 2000, 500}, {P({1, 1, 1}), 600, 2},
                                   {P({2, 1, 1, 1}), 900, 47},   {P({-2, 0, 0, 0, 1}), 300, 101}};
  for (const auto& c : cases) {
    NumberField K(c.f);
    auto recs = sieve_smooth(K, c.x, c.y);
    REQUIRE(recs.size() == static_cast<std::size_t>(c.x));
    CHECK(compare_with_trial_division(recs, K.norm_poly(), c.y) == 0);
  }
  CHECK(compare_with_trial_division(sieve_smooth_linear(2000, 37), P({0, 1}), 37) == 0);
}

TEST_CASE("records reconstruct P(n)") {
  NumberField K(P({2, 1, 1, 1}));
  for (const auto& r : sieve_smooth(K, 1500, 300)) {
    mpz_class v = r.cofactor;
    for (auto [p, e] : r.factors) {
      mpz_class pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
      v *= pe;
    }
    CHECK(v * r.sign == oracle::eval(K.norm_poly(), r.n));
    CHECK(r.is_smooth == (r.cofactor == 1));
  }
}

TEST_CASE("largest prime of non-smooth values") {
  NumberField K(P({1, 1, 1}));
  for (const auto& r : sieve_smooth(K, 3000, 50)) {
    auto tf = oracle::trial_factor(oracle::eval(K.norm_poly(), r.n));
    REQUIRE(r.largest_known);
    mpz_class expect = tf.empty() ? mpz_class(1) : mpz_class(static_cast<unsigned long>(tf.rbegin()->first));
    CHECK(r.largest_prime == expect);
  }
}

TEST_CASE("threaded sieve is identical to the serial one") {
  NumberField K(P({2, 1, 1, 1}));
  auto serial = sieve_smooth(K, 20000, 1000);
  for (unsigned t : {2u, 3u, 8u}) {
    SieveOptions o;
    o.threads = t;
    auto par = sieve_smooth(K, 20000, 1000, o);
    REQUIRE(par.size() == serial.size());
    bool same = true;
    for (std::size_t i = 0; i < par.size(); ++i)
      same = same && par[i].n == serial[i].n && par[i].factors == serial[i].factors &&
             par[i].cofactor == serial[i].cofactor && par[i].is_smooth == serial[i].is_smooth &&
             par[i].largest_prime == serial[i].largest_prime;
    CHECK(same);
  }
}

TEST_CASE("psi is monotone in x and in y") {
  NumberField K(P({1, 1, 1}));
  std::int64_t prev = -1;
  for (std::uint64_t y : {2u, 3u, 10u, 50u, 200u, 1000u}) {
    auto v = psi_count(sieve_smooth(K, 800, y), 1);
    CHECK(v >= prev);
    prev = v;
  }
  auto recs = sieve_smooth(K, 800, 50);
  std::int64_t run = 0, last = 0;
  for (const auto& r : recs) {
    if (r.n >= 1 && r.is_smooth) ++run;
    CHECK(run >= last);
    last = run;
  }
}

TEST_CASE("sieve hits are exactly the divisible values") {
  NumberField K(P({2, 1, 1, 1}));
  auto fb = build_factor_base(K.norm_poly(), 60);
  for (std::size_t k = 0; k < fb.primes.size(); ++k) {
    const std::uint64_t p = fb.primes[k];
    if (K.is_exceptional(p)) continue;
    for (std::int64_t n = 0; n < 400; ++n) {
      bool divides = oracle::eval(K.norm_poly(), n) % static_cast<unsigned long>(p) == 0;
      bool hit = false;
      for (auto r : fb.roots[k]) hit = hit || static_cast<std::uint64_t>(n) % p == r;
      CHECK(divides == hit);
    }
  }
}

TEST_CASE("conjecture tables") {
  NumberField e(P({1, 1, 1}));
  RhoGrid g = rho_build(8.0, 1e-9);
  auto one = conjecture_tables(e, {7}, {7}, g);
  REQUIRE(one.size() == 1);
  CHECK(one[0].psi == 4);
  CHECK(std::fabs(one[0].rho_ratio - 4.0 / (7.0 * (1.0 - std::log(2.0)))) < 1e-9);
  CHECK(std::fabs(one[0].rho_ratio - 1.86) < 0.01);

  // P(n) = n: every n < x is x-smooth.
  for (std::int64_t x : {10, 57, 1000}) {
    auto t = conjecture_tables(linear_bypass_poly(), 1, {x}, {static_cast<std::uint64_t>(x)}, g);
    CHECK(t[0].psi == x - 1);
    CHECK(std::fabs(t[0].rho_ratio - double(x - 1) / x) < 1e-12);
  }

  // Grid cells agree with direct sieving.
  auto rows = conjecture_tables(e, {100, 500, 1000}, {10, 30, 1000}, g);
  CHECK(rows.size() == 9);
  for (const auto& r : rows) CHECK(r.psi == psi_count(sieve_smooth(e, r.x, r.y), 1));
}

TEST_CASE("argument errors") {
  NumberField e(P({1, 1, 1}));
  CHECK_THROWS_AS(sieve_smooth(e, -1, 7), ArgumentError);
  CHECK_THROWS_AS(sieve_smooth(e, 10, 1), ArgumentError);
}
