#include "shiftdep/relations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "shiftdep/embedding.hpp"
#include "shiftdep/errors.hpp"
#include "shiftdep/sieve.hpp"

namespace shiftdep {

namespace {

using Terms = std::vector<std::pair<std::int64_t, long>>;

// Raised inside unit_combine when a numerical guess fails exact checking.
struct GuessFailed {};

IntPoly shift_int(const NumberField& K, std::int64_t n) {
  IntPoly e(static_cast<std::size_t>(K.degree()), 0);
  e[0] = static_cast<long>(n);
  e[1] = 1;
  return e;
}

FieldElement from_int(const IntPoly& a) {
  FieldElement e;
  for (const auto& c : a) e.coeffs.emplace_back(c);
  return e;
}

double product_cost(const NumberField& K, const Terms& terms) {
  double total = 0.0;
  for (auto [n, k] : terms) total += std::fabs(static_cast<double>(k));
  std::int64_t max_n = 2;
  for (auto [n, k] : terms) max_n = std::max<std::int64_t>(max_n, n < 0 ? -n : n);
  return total * K.degree() * std::log2(static_cast<double>(max_n));
}

void check_cost(const NumberField& K, const Terms& terms, const RelationLimits& limits) {
  if (product_cost(K, terms) > limits.cost_cap)
    throw ResourceError("exact product exceeds the cost cap");
}

// num and den of prod (n+a)^k, both in Z[a].
std::pair<IntPoly, IntPoly> split_product(const NumberField& K, const Terms& terms) {
  IntPoly one(static_cast<std::size_t>(K.degree()), 0);
  one[0] = 1;
  IntPoly num = one, den = one;
  for (auto [n, k] : terms) {
    IntPoly p = zpow(K, shift_int(K, n), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k > 0)
      num = zmul(K, num, p);
    else
      den = zmul(K, den, p);
  }
  return {std::move(num), std::move(den)};
}

// Largest t with phi(t) <= d.
std::uint64_t max_torsion_order(int d) {
  std::uint64_t best = 1;
  for (std::uint64_t t = 1; t <= static_cast<std::uint64_t>(2 * d * d + 8); ++t)
    if (totient(t) <= static_cast<std::uint64_t>(d)) best = t;
  return best;
}

// Shared by resolve_candidate and unit_combine.
Relation classify(const NumberField& K, Terms terms, const RelationLimits& limits) {
  normalize_terms(terms);
  Relation rel;
  rel.terms = terms;
  if (terms.empty()) {
    rel.status = RelationStatus::refuted;
    return rel;
  }
  check_cost(K, terms, limits);
  auto [num, den] = split_product(K, terms);
  if (num == den) {
    rel.status = RelationStatus::verified;
    return rel;
  }
  FieldElement w = fe_mul(K, from_int(num), fe_inv(K, from_int(den)));
  mpq_class nrm = 1;
  for (auto [n, k] : terms) {
    mpq_class v(K.norm_of_shift(mpz_class(static_cast<long>(n))));
    mpq_class pw = 1;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) pw *= v;
    nrm = k > 0 ? mpq_class(nrm * pw) : mpq_class(nrm / pw);
  }
  rel.witness = w;
  if (abs(nrm) != 1) {
    rel.status = RelationStatus::refuted;
    return rel;
  }
  const std::uint64_t tmax = max_torsion_order(K.degree());
  FieldElement cur = w;
  for (std::uint64_t t = 2; t <= tmax; ++t) {
    cur = fe_mul(K, cur, w);
    if (!cur.is_one()) continue;
    Terms scaled = terms;
    for (auto& [n, k] : scaled) k *= static_cast<long>(t);
    check_cost(K, scaled, limits);
    if (!verify_relation(K, scaled))
      throw ConsistencyError("torsion-scaled product did not verify");
    rel.terms = std::move(scaled);
    rel.status = RelationStatus::verified;
    rel.torsion_order = t;
    rel.witness.reset();
    return rel;
  }
  if (K.unit_rank() == 0)
    throw ConsistencyError("infinite-order unit in a field of unit rank 0");
  rel.status = RelationStatus::candidate;
  return rel;
}

Terms terms_from_kernel(const std::vector<std::int64_t>& elements, const SparseVec& kvec) {
  Terms terms;
  for (const auto& [i, k] : kvec) {
    if (i >= elements.size()) throw ArgumentError("kernel vector index beyond element list");
    if (!k.fits_slong_p()) throw ResourceError("kernel coefficient does not fit a machine word");
    terms.emplace_back(elements[i], k.get_si());
  }
  return terms;
}

std::vector<BigFloat> log_embedding(const Embedding& E, const Terms& terms,
                                    std::map<std::int64_t, std::vector<BigFloat>>& cache) {
  std::vector<BigFloat> out;
  for (int i = 0; i < E.places(); ++i) out.emplace_back(0L, E.prec() + 32);
  for (auto [n, k] : terms) {
    auto it = cache.find(n);
    if (it == cache.end())
      it = cache.emplace(n, E.log_abs_shift(mpz_class(static_cast<long>(n)))).first;
    BigFloat kk(k, E.prec() + 32);
    for (int i = 0; i < E.places(); ++i) out[i] += kk * it->second[i];
  }
  return out;
}

// Small integer c with sum c_j v_j ~ 0 and c.back() != 0, via LLL on
// [I | round(2^S v)].
std::optional<std::vector<mpz_class>> integer_relation(
    const std::vector<std::vector<BigFloat>>& vecs, long prec) {
  const std::size_t s = vecs.size();
  const std::size_t c = vecs.front().size();
  const long scale = prec / 2;
  std::vector<std::vector<mpz_class>> lat(s, std::vector<mpz_class>(s + c, 0));
  for (std::size_t j = 0; j < s; ++j) {
    lat[j][j] = 1;
    for (std::size_t t = 0; t < c; ++t) lat[j][s + t] = vecs[j][t].scaled_round(scale);
  }
  if (!lll_reduce(lat)) return std::nullopt;
  std::optional<std::vector<mpz_class>> best;
  mpz_class best_norm;
  for (const auto& row : lat) {
    std::vector<mpz_class> coef(row.begin(), row.begin() + static_cast<long>(s));
    if (coef.back() == 0) continue;
    mpz_class l1 = 0, mx = 0;
    for (auto& x : coef) {
      l1 += abs(x);
      mx = std::max(mx, mpz_class(abs(x)));
    }
    if (mpz_sizeinbase(mx.get_mpz_t(), 2) > static_cast<std::size_t>(scale / 4)) continue;
    bool small = true;
    for (std::size_t t = 0; t < c && small; ++t) {
      BigFloat acc(0L, prec + 32);
      for (std::size_t j = 0; j < s; ++j) acc += BigFloat(coef[j], prec + 32) * vecs[j][t];
      small = acc.is_zero() || acc.exponent() < -scale / 2;
    }
    if (!small) continue;
    if (!best || l1 < best_norm) {
      best = coef;
      best_norm = l1;
    }
  }
  return best;
}

std::vector<Relation> combine_at(const NumberField& K, const std::vector<Relation>& candidates,
                                 const RelationLimits& limits, long prec) {
  Embedding E(K, prec);
  std::map<std::int64_t, std::vector<BigFloat>> cache;
  std::vector<std::vector<BigFloat>> logs;
  for (const auto& c : candidates) logs.push_back(log_embedding(E, c.terms, cache));

  std::vector<std::size_t> basis;
  std::vector<Relation> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::vector<std::vector<BigFloat>> vecs;
    for (std::size_t b : basis) vecs.push_back(logs[b]);
    vecs.push_back(logs[i]);
    auto coef = integer_relation(vecs, prec);
    if (!coef) {
      if (static_cast<int>(basis.size()) >= K.unit_rank()) throw GuessFailed{};
      basis.push_back(i);
      continue;
    }
    std::map<std::int64_t, long> sum;
    bool fits = true;
    for (std::size_t j = 0; j < coef->size(); ++j) {
      const Relation& src = candidates[j + 1 == coef->size() ? i : basis[j]];
      if (!(*coef)[j].fits_slong_p()) fits = false;
      const long cj = (*coef)[j].get_si();
      for (auto [n, k] : src.terms) sum[n] += cj * k;
    }
    if (!fits) throw GuessFailed{};
    Terms combined;
    for (auto [n, k] : sum)
      if (k != 0) combined.emplace_back(n, k);
    // The candidates' own terms cancel (w and 1/w): exact, but no relation.
    if (combined.empty()) continue;
    Relation rel;
    try {
      rel = classify(K, combined, limits);
    } catch (const ResourceError&) {
      continue;
    }
    if (rel.status != RelationStatus::verified) throw GuessFailed{};
    out.push_back(std::move(rel));
  }
  return out;
}

bool terms_less(const Relation& a, const Relation& b) {
  long la = 0, lb = 0;
  for (auto [n, k] : a.terms) la += std::labs(k);
  for (auto [n, k] : b.terms) lb += std::labs(k);
  if (la != lb) return la < lb;
  return a.terms < b.terms;
}

}  // namespace

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::candidate: return "candidate";
    case RelationStatus::verified: return "verified";
    case RelationStatus::refuted: return "refuted";
  }
  return "unknown";
}

void normalize_terms(Terms& terms) {
  std::map<std::int64_t, long> acc;
  for (auto [n, k] : terms) acc[n] += k;
  terms.clear();
  for (auto [n, k] : acc)
    if (k != 0) terms.emplace_back(n, k);
  if (!terms.empty() && terms.front().second < 0)
    for (auto& [n, k] : terms) k = -k;
}

SparseMatrix exponent_matrix(const std::vector<ExponentVector>& vectors,
                             std::size_t column_count) {
  SparseMatrix m;
  m.cols = column_count;
  for (const auto& v : vectors) {
    SparseVec row;
    for (auto [c, e] : v.entries) {
      if (c >= column_count) throw ArgumentError("exponent vector column beyond index");
      if (e != 0) row.emplace_back(c, mpz_class(e));
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

FieldElement relation_product(const NumberField& K, const Terms& terms) {
  FieldElement acc = K.one();
  for (auto [n, k] : terms)
    acc = fe_mul(K, acc, fe_pow(K, K.shift(mpz_class(static_cast<long>(n))), k));
  return acc;
}

bool verify_relation(const NumberField& K, const Terms& terms) {
  if (terms.empty()) return false;
  auto [num, den] = split_product(K, terms);
  return num == den;
}

Relation resolve_candidate(const NumberField& K, const std::vector<std::int64_t>& elements,
                           const SparseVec& kvec, const RelationLimits& limits) {
  return classify(K, terms_from_kernel(elements, kvec), limits);
}

std::vector<Relation> unit_combine(const NumberField& K, const std::vector<Relation>& candidates,
                                   const RelationLimits& limits, long* precision_used) {
  std::vector<Relation> units, out;
  for (const auto& c : candidates) {
    if (c.status == RelationStatus::verified) {  // already settled, passed through
      out.push_back(c);
      continue;
    }
    if (!c.witness || abs(fe_norm(K, *c.witness)) != 1)
      throw ArgumentError("unit_combine: candidate witness is not a unit");
    units.push_back(c);
  }
  if (units.empty() || K.unit_rank() == 0) return out;
  for (long prec = limits.prec_start; prec <= limits.prec_max; prec *= 2) {
    try {
      auto found = combine_at(K, units, limits, prec);
      if (precision_used) *precision_used = prec;
      out.insert(out.end(), found.begin(), found.end());
      return out;
    } catch (const GuessFailed&) {
    }
  }
  throw PrecisionError("unit_combine: no consistent dependency up to " +
                       std::to_string(limits.prec_max) + " bits");
}

std::int64_t existence_margin(std::int64_t count_smooth, std::int64_t column_count,
                              int unit_rank) {
  return count_smooth - (column_count + unit_rank + 2);
}

namespace {

void run_stage(const NumberField& K, const std::vector<std::int64_t>& elements,
               const SparseMatrix& m, const RelationLimits& limits, SearchReport& report,
               std::vector<Relation>& verified) {
  KernelBasis kb = kernel_basis(m);
  report.elements_used = elements.size();
  report.matrix_rank = kb.rank;
  report.nullity = kb.nullity;

  std::vector<std::pair<mpz_class, SparseVec>> order;
  for (auto& v : kb.vectors) order.emplace_back(l1_norm(v), std::move(v));
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  if (order.size() > limits.max_candidates) order.resize(limits.max_candidates);

  std::vector<std::optional<Relation>> resolved(order.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        resolved[i] = resolve_candidate(K, elements, order[i].second, limits);
      } catch (const ResourceError&) {
      }
    }
  };
  const unsigned threads = std::max(1u, limits.threads);
  if (threads == 1 || order.size() < 2) {
    work(0, order.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (order.size() + threads - 1) / threads;
    for (std::size_t lo = 0; lo < order.size(); lo += chunk)
      pool.emplace_back(work, lo, std::min(order.size(), lo + chunk));
    for (auto& t : pool) t.join();
  }

  std::vector<Relation> units;
  for (auto& r : resolved) {
    ++report.candidates_tried;
    if (!r) {
      ++report.skipped_cost;
      continue;
    }
    switch (r->status) {
      case RelationStatus::verified:
        if (r->torsion_order > 1) ++report.torsion_scaled;
        verified.push_back(std::move(*r));
        break;
      case RelationStatus::candidate:
        ++report.unit_candidates;
        units.push_back(std::move(*r));
        break;
      case RelationStatus::refuted:
        ++report.refuted;
        break;
    }
  }
  long prec = 0;
  auto combined = unit_combine(K, units, limits, &prec);
  report.precision_bits = std::max(report.precision_bits, prec);
  for (auto& r : combined) verified.push_back(std::move(r));
}

std::vector<Relation> finalize(const NumberField& K, std::vector<Relation> rels,
                               std::size_t max_relations) {
  std::sort(rels.begin(), rels.end(), terms_less);
  std::vector<Relation> out;
  std::set<Terms> seen;
  for (auto& r : rels) {
    if (!seen.insert(r.terms).second) continue;
    // independent re-check through FieldElement arithmetic
    if (!relation_product(K, r.terms).is_one())
      throw ConsistencyError("emitted relation failed re-verification");
    out.push_back(std::move(r));
    if (out.size() >= max_relations) break;
  }
  return out;
}

}  // namespace

RelationSearch find_relations(const NumberField& K, std::int64_t x, std::uint64_t y,
                              const RelationLimits& limits) {
  RelationSearch result;
  SearchReport& rep = result.report;
  rep.x = x;
  rep.y = y;
  rep.unit_rank = K.unit_rank();

  FactorBasePrimes fb = build_factor_base(K.norm_poly(), y);
  SieveOptions sopts;
  sopts.threads = limits.threads;
  sopts.resolve_largest_prime = false;
  auto records = sieve_smooth(fb, x, sopts);
  IdealColumnIndex index = build_index(K, fb);
  rep.column_count = index.column_count();

  std::vector<ExponentVector> all;
  for (const auto& rec : records)
    if (rec.is_smooth) all.push_back(ideal_factorize(K, index, rec));
  rep.smooth_count = static_cast<std::int64_t>(all.size());
  rep.margin = existence_margin(rep.smooth_count, static_cast<std::int64_t>(rep.column_count),
                                rep.unit_rank);

  auto stage = [&](bool include_exceptional) {
    std::vector<ExponentVector> chosen;
    std::vector<std::int64_t> elements;
    for (const auto& v : all) {
      if (!include_exceptional && !v.torsion_safe) continue;
      chosen.push_back(v);
      elements.push_back(v.n);
    }
    std::vector<Relation> verified;
    run_stage(K, elements, exponent_matrix(chosen, index.column_count()), limits, rep, verified);
    return verified;
  };

  rep.exceptional_included = limits.include_exceptional;
  std::vector<Relation> rels = stage(limits.include_exceptional);
  if (rels.empty() && !limits.include_exceptional && limits.exceptional_fallback) {
    rep.fallback_used = true;
    rep.exceptional_included = true;
    rels = stage(true);
  }
  result.relations = finalize(K, std::move(rels), limits.max_relations);
  return result;
}

std::vector<Relation> relations_among(const NumberField& K,
                                      const std::vector<std::int64_t>& elements,
                                      const RelationLimits& limits) {
  FullExponentMatrix fm = full_exponent_matrix(K, elements);
  if (!fm.dropped.empty()) throw ResourceError("relations_among: element norm too large to factor");
  SearchReport rep;
  std::vector<Relation> verified;
  run_stage(K, fm.elements, fm.matrix, limits, rep, verified);
  return finalize(K, std::move(verified), limits.max_relations);
}

}  // namespace shiftdep
