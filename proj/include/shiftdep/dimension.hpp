#pragma once

#include <cstdint>
#include <vector>

#include "shiftdep/dickman.hpp"
#include "shiftdep/field.hpp"
#include "shiftdep/ideals.hpp"
#include "shiftdep/relations.hpp"

namespace shiftdep {

/// Bracket for dim Span_Q{log(n + a) : 0 <= n < x}.
///
/// rank_lower is the rank of the full exponent matrix over every element,
/// smooth or not: any Q-linear dependence of the logarithms is a
/// multiplicative relation up to a root of unity, which the valuation map
/// sends to a left-kernel vector. upper_from_relations subtracts the rank of
/// the verified relation lattice from n_elements. Both ranks are taken over
/// large prime fields, which can only understate a rational rank, so both
/// bounds stay sound. Whether 2 pi i is adjoined changes the span by at most
/// one; the bracket is stated for the matrix ranks.
struct DimensionReport {
  std::int64_t x = 0;
  std::uint64_t y = 0;
  std::int64_t n_elements = 0;
  std::int64_t rank_lower = 0;
  std::int64_t upper_from_relations = 0;
  std::int64_t smooth_count = 0;
  std::int64_t relations_found = 0;
  std::int64_t dropped = 0;        // elements whose cofactor was too large to factor
  double conj5_reference = 0.0;    // (1 - rho(d)) x
  double cassels_baseline = 0.0;   // 0.51 x
  double worley_baseline = 0.0;    // (1 - 1/(2d)) x
};

struct DimensionOptions {
  std::size_t cofactor_digit_cap = 40;
  unsigned threads = 1;
  RelationLimits relation_limits = [] {
    RelationLimits l;
    l.include_exceptional = true;
    l.max_relations = 1u << 20;
    l.max_candidates = 1u << 20;
    return l;
  }();
};

/// The report together with the objects it was computed from.
struct DimensionDetail {
  DimensionReport report;
  FullExponentMatrix matrix;
  std::vector<Relation> relations;
};

/// y = 0 selects y = x.
DimensionDetail dim_bracket_detailed(const NumberField& K, std::int64_t x, std::uint64_t y = 0,
                                     const DimensionOptions& opts = {});
DimensionReport dim_bracket(const NumberField& K, std::int64_t x, std::uint64_t y = 0,
                            const DimensionOptions& opts = {});

struct Conjecture5Row {
  std::int64_t x = 0;
  double lower_ratio = 0.0;   // rank_lower / x
  double upper_ratio = 0.0;   // upper_from_relations / x
  double conj5 = 0.0;         // 1 - rho(d)
  double cassels = 0.51;
  double worley = 0.0;        // 1 - 1/(2d)
};

std::vector<Conjecture5Row> conjecture5_scan(const NumberField& K,
                                             const std::vector<std::int64_t>& x_grid,
                                             const DimensionOptions& opts = {});

/// 1 - rho(d) from a tol = 1e-10 grid.
double conjecture5_density(int d);

}  // namespace shiftdep
