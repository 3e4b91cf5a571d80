#include <doctest.h>

#include "oracles.hpp"
#include "shiftdep/errors.hpp"
#include "shiftdep/ideals.hpp"

using namespace shiftdep;

namespace {

IntPoly P(std::initializer_list<long> c) {
  IntPoly p;
  for (long v : c) p.emplace_back(v);
  return p;
}

using Cols = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

struct Setup {
  NumberField K;
  FactorBasePrimes fb;
  IdealColumnIndex index;
  std::vector<SmoothRecord> recs;
  Setup(IntPoly f, std::int64_t x, std::uint64_t y)
      : K(std::move(f)),
        fb(build_factor_base(K.norm_poly(), y)),
        index(build_index(K, fb)),
        recs(sieve_smooth(fb, x)) {}
};

}  // namespace

TEST_CASE("column index examples") {
  Setup e(P({1, 1, 1}), 7, 7);
  CHECK(e.index.good_columns() == Cols{{7, 3}, {7, 5}});
  CHECK(e.index.exceptional_columns() == std::vector<std::uint64_t>{3});
  CHECK(e.index.column_count() == 3);
  CHECK(e.index.label(*e.index.good_column(7, 5)) == "(7:5)");
  CHECK(e.index.label(*e.index.exceptional_column(3)) == "[3]");
  CHECK_FALSE(e.index.good_column(7, 4).has_value());
  CHECK_FALSE(e.index.exceptional_column(7).has_value());

  Setup q(P({-2, 0, 1}), 3, 7);
  CHECK(q.index.good_columns() == Cols{{7, 3}, {7, 4}});
  CHECK(q.index.exceptional_columns() == std::vector<std::uint64_t>{2});

  Setup two(P({1, 1, 1}), 7, 2);
  CHECK(two.index.good_columns().empty());
  CHECK(two.index.exceptional_columns().empty());
}

TEST_CASE("factorization examples") {
  Setup e(P({1, 1, 1}), 7, 7);
  auto c75 = *e.index.good_column(7, 5), c3 = *e.index.exceptional_column(3);
  auto v5 = ideal_factorize(e.K, e.index, e.recs[5]);
  CHECK(v5.n == 5);
  CHECK(v5.entries == std::map<std::size_t, long>{{c75, 1}, {c3, 1}});
  CHECK_FALSE(v5.torsion_safe);
  auto v1 = ideal_factorize(e.K, e.index, e.recs[1]);
  CHECK(v1.entries.empty());
  CHECK(v1.torsion_safe);
  auto v3 = ideal_factorize(e.K, e.index, e.recs[3]);
  CHECK(v3.entries == std::map<std::size_t, long>{{*e.index.good_column(7, 3), 1}});
  CHECK(v3.torsion_safe);

  Setup q(P({-2, 0, 1}), 3, 3);
  auto v2 = ideal_factorize(q.K, q.index, q.recs[2]);
  CHECK(v2.entries == std::map<std::size_t, long>{{*q.index.exceptional_column(2), 1}});
}

TEST_CASE("factorization errors") {
  Setup e(P({1, 1, 1}), 7, 7);
  CHECK_THROWS_AS(ideal_factorize(e.K, e.index, e.recs[4]), ArgumentError);

  Setup big(P({1, 1, 1}), 7, 13);
  SmoothRecord fake = big.recs[4];  // P(4) = 13
  fake.factors = {{7, 1}};          // 4 is not a root mod 7
  fake.cofactor = 1;
  fake.is_smooth = true;
  CHECK_THROWS_AS(ideal_factorize(big.K, big.index, fake), ConsistencyError);

  NumberField other(P({-2, 0, 1}));
  CHECK_THROWS_AS(build_index(other, e.fb), ArgumentError);
}

TEST_CASE("norm consistency and residue uniqueness") {
  for (const auto& f : {P({1, 1, 1}), P({-2, 0, 1}), P({2, 1, 1, 1}), P({-3, 0, 1})}) {
    Setup s(f, 1500, 200);
    std::size_t good = s.index.good_columns().size();
    for (const auto& r : s.recs) {
      if (!r.is_smooth) continue;
      auto v = ideal_factorize(s.K, s.index, r);
      mpz_class prod = 1;
      std::map<std::uint64_t, int> per_prime;
      bool touches_exceptional = false;
      for (auto [col, e] : v.entries) {
        CHECK(e > 0);
        std::uint64_t p = col < good ? s.index.good_columns()[col].first
                                     : s.index.exceptional_columns()[col - good];
        if (col < good) {
          ++per_prime[p];
          CHECK(static_cast<std::uint64_t>(r.n) % p == s.index.good_columns()[col].second);
        } else {
          touches_exceptional = true;
        }
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
        prod *= pe;
      }
      CHECK(prod == r.value);
      for (auto [p, k] : per_prime) CHECK(k == 1);
      CHECK(v.torsion_safe == !touches_exceptional);
    }
  }
}

TEST_CASE("exponent rows round-trip through text") {
  Setup s(P({2, 1, 1, 1}), 800, 150);
  int seen = 0;
  for (const auto& r : s.recs) {
    if (!r.is_smooth) continue;
    auto v = ideal_factorize(s.K, s.index, r);
    auto text = format_exponent_row(s.index, v);
    CHECK(parse_exponent_row(s.index, text) == v);
    ++seen;
  }
  CHECK(seen > 10);
  Setup e(P({1, 1, 1}), 7, 7);
  CHECK(format_exponent_row(e.index, ideal_factorize(e.K, e.index, e.recs[5])) == "5,(7:5)^1 [3]^1");
  CHECK(format_exponent_row(e.index, ideal_factorize(e.K, e.index, e.recs[0])) == "0,");
  CHECK_THROWS_AS(parse_exponent_row(e.index, "5,(11:5)^1"), ArgumentError);
  CHECK_THROWS_AS(parse_exponent_row(e.index, "garbage"), ArgumentError);
}

TEST_CASE("full exponent matrix") {
  NumberField K(P({1, 1, 1}));
  auto fm = full_exponent_matrix(K, std::vector<std::int64_t>{0, 1, 2, 3, 4});
  CHECK(fm.elements == std::vector<std::int64_t>{0, 1, 2, 3, 4});
  CHECK(fm.dropped.empty());
  REQUIRE(fm.matrix.rows.size() == 5);
  CHECK(fm.matrix.rows[0].empty());
  CHECK(fm.matrix.rows[1].empty());
  std::vector<std::string> row_labels;
  for (std::size_t i = 2; i < 5; ++i) {
    REQUIRE(fm.matrix.rows[i].size() == 1);
    CHECK(fm.matrix.rows[i][0].second == 1);
    row_labels.push_back(fm.column_labels[fm.matrix.rows[i][0].first]);
  }
  CHECK(row_labels == std::vector<std::string>{"[3]", "(7:3)", "(13:4)"});

  // The record-based construction agrees with the element-based one.
  auto recs = sieve_smooth(K, 400, 30);
  auto a = full_exponent_matrix(K, recs);
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 0; n < 400; ++n) ns.push_back(n);
  auto b = full_exponent_matrix(K, ns);
  CHECK(a.elements == b.elements);
  CHECK(a.column_labels == b.column_labels);
  REQUIRE(a.matrix.rows.size() == b.matrix.rows.size());
  bool same = true;
  for (std::size_t i = 0; i < a.matrix.rows.size(); ++i) same = same && a.matrix.rows[i] == b.matrix.rows[i];
  CHECK(same);

  // Row norms match |P(n)|.
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    mpz_class prod = 1;
    for (const auto& [col, e] : b.matrix.rows[i]) {
      const std::string& lab = b.column_labels[col];
      unsigned long p = std::stoul(lab.substr(1));
      mpz_class pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), p, e.get_ui());
      prod *= pe;
    }
    CHECK(prod == abs(oracle::eval(K.norm_poly(), b.elements[i])));
  }
}
