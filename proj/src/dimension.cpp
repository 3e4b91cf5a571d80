#include "shiftdep/dimension.hpp"

#include <string>

#include "shiftdep/errors.hpp"
#include "shiftdep/sieve.hpp"

namespace shiftdep {

double conjecture5_density(int d) {
  RhoGrid grid = rho_build(std::max(2.0, static_cast<double>(d)), 1e-10);
  return 1.0 - rho_eval(grid, static_cast<double>(d));
}

DimensionDetail dim_bracket_detailed(const NumberField& K, std::int64_t x, std::uint64_t y,
                                     const DimensionOptions& opts) {
  if (x < 2) throw ArgumentError("dim_bracket: x must be >= 2");
  if (y == 0) y = static_cast<std::uint64_t>(x);
  if (y < 2) throw ArgumentError("dim_bracket: y must be >= 2");

  DimensionDetail out;
  DimensionReport& rep = out.report;
  rep.x = x;
  rep.y = y;
  rep.n_elements = x;

  SieveOptions sopts;
  sopts.threads = opts.threads;
  sopts.resolve_largest_prime = false;
  auto records = sieve_smooth(K, x, y, sopts);
  rep.smooth_count = psi_count(records, 0);
  out.matrix = full_exponent_matrix(K, records, opts.cofactor_digit_cap);
  rep.dropped = static_cast<std::int64_t>(out.matrix.dropped.size());
  rep.rank_lower = static_cast<std::int64_t>(rank_lower_bound(out.matrix.matrix));

  RelationLimits limits = opts.relation_limits;
  limits.threads = opts.threads;
  out.relations = find_relations(K, x, y, limits).relations;
  rep.relations_found = static_cast<std::int64_t>(out.relations.size());
  SparseMatrix rel;
  rel.cols = static_cast<std::size_t>(x);
  for (const auto& r : out.relations) {
    SparseVec v;
    for (auto [n, k] : r.terms) v.emplace_back(static_cast<std::size_t>(n), mpz_class(k));
    rel.rows.push_back(std::move(v));
  }
  rep.upper_from_relations = x - static_cast<std::int64_t>(rank_lower_bound(rel));
  if (rep.rank_lower > rep.upper_from_relations)
    throw ConsistencyError("dimension bracket inverted: " + std::to_string(rep.rank_lower) +
                           " > " + std::to_string(rep.upper_from_relations));

  const double xd = static_cast<double>(x);
  rep.conj5_reference = conjecture5_density(K.degree()) * xd;
  rep.cassels_baseline = 0.51 * xd;
  rep.worley_baseline = (1.0 - 1.0 / (2.0 * K.degree())) * xd;
  return out;
}

DimensionReport dim_bracket(const NumberField& K, std::int64_t x, std::uint64_t y,
                            const DimensionOptions& opts) {
  return dim_bracket_detailed(K, x, y, opts).report;
}

std::vector<Conjecture5Row> conjecture5_scan(const NumberField& K,
                                             const std::vector<std::int64_t>& x_grid,
                                             const DimensionOptions& opts) {
  if (x_grid.empty()) throw ArgumentError("conjecture5_scan: empty grid");
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (x_grid[i] <= x_grid[i - 1]) throw ArgumentError("conjecture5_scan: grid must ascend");
  const double conj5 = conjecture5_density(K.degree());
  std::vector<Conjecture5Row> rows;
  for (std::int64_t x : x_grid) {
    DimensionReport rep = dim_bracket(K, x, 0, opts);
    Conjecture5Row row;
    row.x = x;
    row.lower_ratio = static_cast<double>(rep.rank_lower) / static_cast<double>(x);
    row.upper_ratio = static_cast<double>(rep.upper_from_relations) / static_cast<double>(x);
    row.conj5 = conj5;
    row.worley = 1.0 - 1.0 / (2.0 * K.degree());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace shiftdep
