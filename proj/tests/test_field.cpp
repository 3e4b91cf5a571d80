#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shiftdep/errors.hpp"
#include "shiftdep/field.hpp"

using namespace shiftdep;

namespace {

IntPoly P(std::initializer_list<long> c) {
  IntPoly p;
  for (long v : c) p.emplace_back(v);
  return p;
}

FieldElement elt(const NumberField& K, std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return K.element(v);
}

FieldElement random_elt(const NumberField& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
  std::vector<mpq_class> v;
  for (int i = 0; i < K.degree(); ++i) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  return K.element(v);
}

const std::vector<IntPoly>& test_fields() {
  static const std::vector<IntPoly> fs = {P({1, 1, 1}), P({-2, 0, 1}), P({2, 1, 1, 1}),
                                          P({1, 0, 1}), P({-1, 1, 1}), P({-2, 0, 0, 0, 1}),
                                          P({3, -1, 0, 2, 0, 1})};
  return fs;
}

}  // namespace

TEST_CASE("field invariants of the worked examples") {
  NumberField e(P({1, 1, 1}));
  CHECK(e.degree() == 2);
  CHECK(e.disc() == -3);
  CHECK(e.norm_poly() == P({1, -1, 1}));
  CHECK(e.r1() == 0);
  CHECK(e.r2() == 1);
  CHECK(e.unit_rank() == 0);
  CHECK(e.exceptional_primes() == std::vector<mpz_class>{3});

  NumberField q(P({-2, 0, 1}));
  CHECK(q.disc() == 8);
  CHECK(q.norm_poly() == P({-2, 0, 1}));
  CHECK(q.r1() == 2);
  CHECK(q.r2() == 0);
  CHECK(q.unit_rank() == 1);
  CHECK(q.exceptional_primes() == std::vector<mpz_class>{2});

  NumberField c(P({2, 1, 1, 1}));
  CHECK(c.r1() == 1);
  CHECK(c.r2() == 1);
  CHECK(c.unit_rank() == 1);
  // b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd for x^3 + x^2 + x + 2
  CHECK(c.disc() == 1 - 4 - 8 - 108 + 36);
  CHECK(c.exceptional_primes() == std::vector<mpz_class>{83});
  CHECK(c.irreducibility_certified());
}

TEST_CASE("norm polynomial is (-1)^d f(-n)") {
  for (const auto& f : test_fields()) {
    NumberField K(f);
    int d = K.degree();
    for (long n = -5; n <= 5; ++n) {
      mpz_class expect = oracle::eval(f, -n);
      if (d % 2) expect = -expect;
      CHECK(oracle::eval(K.norm_poly(), n) == expect);
    }
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(NumberField(P({1, 1})), ArgumentError);
  CHECK_THROWS_AS(NumberField(P({1, 0, 2})), UnsupportedInput);
  CHECK_THROWS_AS(NumberField(P({-1, 0, 1})), ArgumentError);
  CHECK_THROWS_AS(NumberField(P({2, 3, 1})), ArgumentError);
  CHECK_THROWS_AS(NumberField(P({0, 0, 0, 1})), ArgumentError);
  // (x^2+1)^2 has no rational root but is reducible; caught by the
  // discriminant or by degree patterns.
  CHECK_THROWS_AS(NumberField(P({1, 0, 2, 0, 1})), ArgumentError);
  try {
    NumberField bad(P({-6, 1, 1}));  // (x - 2)(x + 3)
    FAIL("accepted a reducible polynomial");
  } catch (const ArgumentError& e) {
    std::string msg = e.what();
    CHECK((msg.find("x - (2)") != std::string::npos || msg.find("x - (-3)") != std::string::npos));
  }
}

TEST_CASE("multiplication examples") {
  NumberField e(P({1, 1, 1}));
  auto a = e.generator();
  CHECK(fe_mul(e, a, a) == elt(e, {-1, -1}));
  CHECK(fe_mul(e, a, elt(e, {-1, -1})).is_one());
  CHECK(fe_pow(e, a, 3).is_one());
  CHECK(fe_inv(e, a) == elt(e, {-1, -1}));
  CHECK(fe_norm(e, elt(e, {5, 1})) == 21);

  NumberField q(P({-2, 0, 1}));
  auto r = q.generator();
  CHECK(fe_mul(q, r, elt(q, {1, 1})) == elt(q, {2, 1}));
  CHECK(fe_pow(q, elt(q, {1, 1}), -1) == elt(q, {-1, 1}));
  CHECK(fe_inv(q, r) == q.element({0, mpq_class(1, 2)}));
  CHECK(fe_norm(q, r) == -2);

  std::mt19937_64 rng(1);
  for (const auto& f : test_fields()) {
    NumberField K(f);
    CHECK(fe_norm(K, K.one()) == 1);
    CHECK(fe_inv(K, K.one()).is_one());
    CHECK(fe_pow(K, random_elt(K, rng), 0).is_one());
  }
}

TEST_CASE("division errors") {
  NumberField e(P({1, 1, 1}));
  CHECK_THROWS_AS(fe_inv(e, e.zero()), DivisionError);
  CHECK_THROWS_AS(fe_pow(e, e.zero(), 0), DivisionError);
  CHECK_THROWS_AS(fe_pow(e, e.zero(), -2), DivisionError);
  CHECK(fe_pow(e, e.zero(), 3).is_zero());
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(20241);
  for (const auto& f : test_fields()) {
    NumberField K(f);
    for (int it = 0; it < 25; ++it) {
      auto a = random_elt(K, rng), b = random_elt(K, rng), c = random_elt(K, rng);
      CHECK(fe_mul(K, a, b) == fe_mul(K, b, a));
      CHECK(fe_mul(K, fe_mul(K, a, b), c) == fe_mul(K, a, fe_mul(K, b, c)));
      CHECK(fe_mul(K, a, fe_add(K, b, c)) == fe_add(K, fe_mul(K, a, b), fe_mul(K, a, c)));
      CHECK(fe_sub(K, fe_add(K, a, b), b) == a);
      if (!a.is_zero()) CHECK(fe_mul(K, a, fe_inv(K, a)).is_one());
    }
  }
}

TEST_CASE("norm is multiplicative and equals the multiplication-matrix determinant") {
  std::mt19937_64 rng(77);
  for (const auto& f : test_fields()) {
    NumberField K(f);
    oracle::Ring R{f};
    for (int it = 0; it < 15; ++it) {
      auto a = random_elt(K, rng), b = random_elt(K, rng);
      CHECK(fe_norm(K, fe_mul(K, a, b)) == fe_norm(K, a) * fe_norm(K, b));
      CHECK(fe_norm(K, a) == oracle::det(R.mult_matrix(a.coeffs)));
    }
  }
}

TEST_CASE("norm of n + a equals P(n) for 0 <= n < 100") {
  for (const auto& f : test_fields()) {
    NumberField K(f);
    for (long n = 0; n < 100; ++n) {
      mpq_class nm = fe_norm(K, K.shift(n));
      CHECK(nm == mpq_class(oracle::eval(K.norm_poly(), n)));
      CHECK(K.norm_of_shift(n) == nm);
    }
  }
}

TEST_CASE("powers and their inverses cancel") {
  std::mt19937_64 rng(5);
  for (const auto& f : test_fields()) {
    NumberField K(f);
    for (int it = 0; it < 6; ++it) {
      auto a = random_elt(K, rng);
      if (a.is_zero()) continue;
      for (long k = -8; k <= 8; ++k)
        CHECK(fe_mul(K, fe_pow(K, a, k), fe_pow(K, a, -k)).is_one());
    }
  }
}

TEST_CASE("integral arithmetic matches the reference ring") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-50, 50);
  for (const auto& f : test_fields()) {
    NumberField K(f);
    oracle::Ring R{f};
    for (int it = 0; it < 20; ++it) {
      IntPoly a(K.degree()), b(K.degree());
      for (auto& c : a) c = coef(rng);
      for (auto& c : b) c = coef(rng);
      CHECK(zmul(K, a, b) == R.mul(a, b));
      CHECK(zpow(K, a, 5) == R.pow(a, 5));
    }
  }
}

TEST_CASE("resultant and real root count") {
  // Res(x^2 - 2, x - 1) = f(1) up to sign convention 1^2 * (-1)
  mpz_class r = resultant(P({-2, 0, 1}), P({-1, 1}));
  CHECK(abs(r) == 1);
  CHECK(resultant(P({-2, 0, 1}), P({-2, 1})) == 2);
  CHECK(count_real_roots(P({-2, 0, 1})) == 2);
  CHECK(count_real_roots(P({1, 0, 1})) == 0);
  CHECK(count_real_roots(P({2, 1, 1, 1})) == 1);
  CHECK(count_real_roots(P({0, -1, 0, 1})) == 3);
}

TEST_CASE("signature sums to the degree") {
  for (const auto& f : test_fields()) {
    NumberField K(f);
    CHECK(K.r1() + 2 * K.r2() == K.degree());
    CHECK(K.r1() == count_real_roots(f));
  }
}

TEST_CASE("element printing") {
  NumberField e(P({1, 1, 1}));
  CHECK(e.one().to_string() == "1");
  CHECK_FALSE(elt(e, {-1, -1}).to_string().empty());
}
