#include <doctest.h>

#include "completeness.hpp"
#include "oracles.hpp"
#include "shiftdep/errors.hpp"
#include "shiftdep/relations.hpp"

using namespace shiftdep;

namespace {

IntPoly P(std::initializer_list<long> c) {
  IntPoly p;
  for (long v : c) p.emplace_back(v);
  return p;
}

using Terms = std::vector<std::pair<std::int64_t, long>>;

SparseVec sv(std::initializer_list<long> dense) {
  std::vector<mpz_class> v;
  for (long x : dense) v.emplace_back(x);
  return to_sparse(v);
}

bool has_terms(const std::vector<Relation>& rels, const Terms& t) {
  for (const auto& r : rels)
    if (r.terms == t) return true;
  return false;
}

/// Every relation is verified, re-checks in the reference ring and maps to 0
/// through the full exponent matrix of its own elements.
void check_sound(const NumberField& K, const std::vector<Relation>& rels) {
  oracle::Ring R{K.f()};
  for (const auto& r : rels) {
    CHECK(r.status == RelationStatus::verified);
    CHECK(R.product_is_one(r.terms));
    std::vector<std::int64_t> el;
    for (auto [n, k] : r.terms) el.push_back(n);
    auto fm = full_exponent_matrix(K, el);
    std::vector<mpz_class> v;
    for (auto [n, k] : r.terms) v.emplace_back(k);
    for (const auto& x : left_multiply(to_sparse(v), fm.matrix)) CHECK(x == 0);
  }
}

}  // namespace

TEST_CASE("status names") {
  CHECK(to_string(RelationStatus::verified) == "verified");
  CHECK(to_string(RelationStatus::candidate) == "candidate");
  CHECK(to_string(RelationStatus::refuted) == "refuted");
}

TEST_CASE("term normalization") {
  Terms t = {{5, -2}, {1, 3}, {5, 2}, {2, 0}, {0, -1}};
  normalize_terms(t);
  CHECK(t == Terms{{0, 1}, {1, -3}});
  Terms u = {{3, 4}, {1, 2}};
  normalize_terms(u);
  CHECK(u == Terms{{1, 2}, {3, 4}});  // no division by the gcd
}

TEST_CASE("existence margin") {
  CHECK(existence_margin(10, 4, 0) == 4);
  CHECK(existence_margin(5, 3, 0) == 0);
  CHECK(existence_margin(7 + 2 + 3, 7, 2) == 1);
}

TEST_CASE("exponent matrix examples") {
  NumberField e(P({1, 1, 1}));
  auto fb = build_factor_base(e.norm_poly(), 7);
  auto index = build_index(e, fb);
  auto recs = sieve_smooth(fb, 7);
  std::vector<ExponentVector> vs;
  for (int n : {1, 2, 5}) vs.push_back(ideal_factorize(e, index, recs[n]));
  auto m = exponent_matrix(vs, index.column_count());
  CHECK(m.cols == 3);
  auto c3 = *index.exceptional_column(3), c75 = *index.good_column(7, 5);
  CHECK(m.rows[0].empty());
  CHECK(m.rows[1] == SparseVec{{c3, 1}});
  CHECK(m.rows[2] == SparseVec{{c75, 1}, {c3, 1}});
  auto empty = exponent_matrix({}, 4);
  CHECK(empty.rows.empty());
  CHECK(empty.cols == 4);

  NumberField q(P({-2, 0, 1}));
  auto qfb = build_factor_base(q.norm_poly(), 3);
  auto qi = build_index(q, qfb);
  auto qr = sieve_smooth(qfb, 3);
  std::vector<ExponentVector> qv;
  for (int n : {0, 1, 2}) qv.push_back(ideal_factorize(q, qi, qr[n]));
  auto qm = exponent_matrix(qv, qi.column_count());
  auto c2 = *qi.exceptional_column(2);
  CHECK(qm.rows[0] == SparseVec{{c2, 1}});
  CHECK(qm.rows[1].empty());
  CHECK(qm.rows[2] == SparseVec{{c2, 1}});
}

TEST_CASE("product and verification paths agree") {
  NumberField e(P({1, 1, 1}));
  CHECK(relation_product(e, {{0, 3}}).is_one());
  CHECK(verify_relation(e, {{0, 3}}));
  CHECK(verify_relation(e, {{1, 6}}));
  CHECK_FALSE(verify_relation(e, {{1, 3}}));
  CHECK(relation_product(e, {{1, 3}}) == e.element({-1, 0}));
  NumberField q(P({-2, 0, 1}));
  CHECK(verify_relation(q, {{0, 1}, {1, 1}, {2, -1}}));
  CHECK_FALSE(verify_relation(q, {{0, 1}, {2, -1}}));
  CHECK(relation_product(q, {{0, 1}, {2, -1}}) == q.element({-1, 1}));
}

TEST_CASE("resolve_candidate cases") {
  NumberField e(P({1, 1, 1}));
  auto r6 = resolve_candidate(e, {1}, sv({1}));
  CHECK(r6.status == RelationStatus::verified);
  CHECK(r6.torsion_order == 6);
  CHECK(r6.terms == Terms{{1, 6}});
  auto r3 = resolve_candidate(e, {0}, sv({1}));
  CHECK(r3.status == RelationStatus::verified);
  CHECK(r3.torsion_order == 3);
  CHECK(r3.terms == Terms{{0, 3}});
  // Raw relation without torsion.
  auto r1 = resolve_candidate(e, {0}, sv({3}));
  CHECK(r1.status == RelationStatus::verified);
  CHECK(r1.torsion_order == 1);

  NumberField q(P({-2, 0, 1}));
  auto c = resolve_candidate(q, {0, 1, 2}, sv({1, 0, -1}));
  CHECK(c.status == RelationStatus::candidate);
  REQUIRE(c.witness.has_value());
  CHECK(*c.witness == q.element({-1, 1}));

  // Norms 7 and 14: the quotient is not even a unit.
  auto bad = resolve_candidate(q, {3, 4}, sv({1, -1}));
  CHECK(bad.status == RelationStatus::refuted);

  // x^2 + 1: i has order 4, 1 + i has norm 2, (1+i)^2 = 2i.
  NumberField g(P({1, 0, 1}));
  auto t4 = resolve_candidate(g, {0}, sv({1}));
  CHECK(t4.torsion_order == 4);
  CHECK(t4.terms == Terms{{0, 4}});
}

TEST_CASE("torsion order is minimal") {
  for (const auto& f : {P({1, 1, 1}), P({1, 0, 1}), P({1, -1, 1})}) {
    NumberField K(f);
    for (std::int64_t n = 0; n < 3; ++n) {
      if (abs(K.norm_of_shift(n)) != 1) continue;
      auto r = resolve_candidate(K, {n}, sv({1}));
      if (r.status != RelationStatus::verified) continue;
      auto w = K.shift(n);
      CHECK(fe_pow(K, w, static_cast<long>(r.torsion_order)).is_one());
      for (std::uint64_t t = 1; t < r.torsion_order; ++t)
        CHECK_FALSE(fe_pow(K, w, static_cast<long>(t)).is_one());
    }
  }
}

TEST_CASE("cost cap") {
  NumberField q(P({-2, 0, 1}));
  RelationLimits lim;
  lim.cost_cap = 10;
  CHECK_THROWS_AS(resolve_candidate(q, {0, 1000}, sv({50, -50}), lim), ResourceError);
}

TEST_CASE("unit_combine examples") {
  NumberField q(P({-2, 0, 1}));
  auto a = resolve_candidate(q, {0, 1, 2}, sv({1, 0, -1}));
  auto b = resolve_candidate(q, {0, 1, 2}, sv({0, 1, 0}));
  REQUIRE(a.status == RelationStatus::candidate);
  REQUIRE(b.status == RelationStatus::candidate);
  CHECK(*b.witness == q.element({1, 1}));
  long prec = 0;
  auto out = unit_combine(q, {a, b}, {}, &prec);
  REQUIRE(out.size() == 1);
  CHECK(out[0].terms == Terms{{0, 1}, {1, 1}, {2, -1}});
  CHECK(out[0].status == RelationStatus::verified);
  CHECK(prec == 256);

  // A unit and its inverse, given by different products.
  Relation inv;
  inv.terms = {{1, -1}};
  inv.witness = q.element({-1, 1});
  inv.status = RelationStatus::candidate;
  auto pair = unit_combine(q, {b, inv}, {});
  CHECK(pair.empty());  // combines to the empty product, not a relation

  // A settled torsion relation passes through untouched.
  NumberField e(P({1, 1, 1}));
  auto t = resolve_candidate(e, {0}, sv({1}));
  auto same = unit_combine(e, {t}, {});
  REQUIRE(same.size() == 1);
  CHECK(same[0].terms == t.terms);

  Relation bogus;
  bogus.terms = {{3, 1}};
  bogus.witness = q.shift(3);
  CHECK_THROWS_AS(unit_combine(q, {bogus}, {}), ArgumentError);
}

TEST_CASE("find_relations worked examples") {
  NumberField e(P({1, 1, 1}));
  auto rs = find_relations(e, 7, 7);
  CHECK(has_terms(rs.relations, {{0, 3}}));
  CHECK(has_terms(rs.relations, {{1, 6}}));
  CHECK(rs.report.smooth_count == 5);
  CHECK(rs.report.column_count == 3);
  CHECK(rs.report.margin == 0);
  check_sound(e, rs.relations);

  NumberField q(P({-2, 0, 1}));
  auto qs = find_relations(q, 3, 3);
  CHECK(has_terms(qs.relations, {{0, 1}, {1, 1}, {2, -1}}));
  CHECK(qs.report.fallback_used);
  check_sound(q, qs.relations);

  RelationLimits strict;
  strict.exceptional_fallback = false;
  CHECK(find_relations(q, 3, 3, strict).relations.empty());
  RelationLimits incl;
  incl.include_exceptional = true;
  auto qi = find_relations(q, 3, 3, incl);
  CHECK(has_terms(qi.relations, {{0, 1}, {1, 1}, {2, -1}}));
  CHECK_FALSE(qi.report.fallback_used);

  NumberField c(P({2, 1, 1, 1}));
  auto cs = find_relations(c, 200, 100);
  CHECK_FALSE(cs.relations.empty());
  check_sound(c, cs.relations);
}

TEST_CASE("find_relations output order and limits") {
  NumberField e(P({1, 1, 1}));
  auto rs = find_relations(e, 400, 100);
  REQUIRE(rs.relations.size() > 3);
  check_sound(e, rs.relations);
  RelationLimits one;
  one.max_relations = 1;
  CHECK(find_relations(e, 400, 100, one).relations.size() == 1);
  RelationLimits threaded;
  threaded.threads = 4;
  auto rt = find_relations(e, 400, 100, threaded);
  REQUIRE(rt.relations.size() == rs.relations.size());
  for (std::size_t i = 0; i < rt.relations.size(); ++i)
    CHECK(rt.relations[i].terms == rs.relations[i].terms);
  for (const auto& r : rs.relations) {
    Terms t = r.terms;
    normalize_terms(t);
    CHECK(t == r.terms);
  }
}

TEST_CASE("relations among explicit elements") {
  NumberField q(P({-2, 0, 1}));
  auto rels = relations_among(q, {0, 1, 2, 4, 6});
  CHECK(has_terms(rels, {{0, 1}, {1, 1}, {2, -1}}));
  check_sound(q, rels);
}

TEST_CASE("small-case completeness against brute force") {
  std::mt19937_64 rng(606);
  int with_relations = 0;
  for (int it = 0; it < 20; ++it) {
    auto ins = completeness::random_instance(rng);
    auto out = completeness::run(ins);
    INFO("instance " << it << ": " << out.describe());
    CHECK(out.agree());
    with_relations += !out.from_brute_force.empty();
  }
  CHECK(with_relations > 0);
}

TEST_CASE("lattice membership helper") {
  auto row = [](std::initializer_list<long> c) {
    std::vector<mpz_class> v;
    for (long x : c) v.emplace_back(x);
    return v;
  };
  // Span of (2,0,4) and (0,3,3), plus a dependent generator.
  auto h = completeness::hermite({row({2, 0, 4}), row({0, 3, 3}), row({2, 3, 7})}, 3);
  CHECK(h.size() == 2);
  CHECK(completeness::in_lattice(h, row({2, 3, 7})));
  CHECK(completeness::in_lattice(h, row({-4, 6, -2})));
  CHECK_FALSE(completeness::in_lattice(h, row({1, 0, 2})));
  CHECK_FALSE(completeness::in_lattice(h, row({0, 0, 1})));
  CHECK(completeness::in_lattice(completeness::hermite({}, 2), row({0, 0})));
}
