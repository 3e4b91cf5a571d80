#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftdep/field.hpp"
#include "shiftdep/ideals.hpp"
#include "shiftdep/linalg.hpp"

namespace shiftdep {

enum class RelationStatus { candidate, verified, refuted };

std::string to_string(RelationStatus s);

/// prod (n + a)^k over `terms`; verified means the exact product is 1.
struct Relation {
  std::vector<std::pair<std::int64_t, long>> terms;  // n strictly increasing, k != 0
  RelationStatus status = RelationStatus::candidate;
  /// The exact product when it is not 1 (unit candidates, refutations).
  std::optional<FieldElement> witness;
  /// Order of the root of unity the raw product was raised by, 1 if none.
  std::uint64_t torsion_order = 1;
};

struct RelationLimits {
  /// Use elements whose factorization touches an exceptional column.
  bool include_exceptional = false;
  /// Retry with exceptional elements when the torsion-safe pass finds nothing.
  bool exceptional_fallback = true;
  std::size_t max_relations = 64;
  std::size_t max_candidates = 4096;
  /// Bound on sum |k_j| * d * log2(max n) per exact product.
  double cost_cap = 1e6;
  long prec_start = 256;
  long prec_max = 4096;
  unsigned threads = 1;
};

struct SearchReport {
  std::int64_t x = 0;
  std::uint64_t y = 0;
  std::int64_t smooth_count = 0;   // smooth n in [0, x)
  std::size_t column_count = 0;
  int unit_rank = 0;
  std::int64_t margin = 0;
  std::size_t elements_used = 0;
  std::size_t matrix_rank = 0;
  std::size_t nullity = 0;
  std::size_t candidates_tried = 0;
  std::size_t torsion_scaled = 0;
  std::size_t unit_candidates = 0;
  std::size_t refuted = 0;
  std::size_t skipped_cost = 0;
  bool exceptional_included = false;
  bool fallback_used = false;
  long precision_bits = 0;
};

struct RelationSearch {
  std::vector<Relation> relations;
  SearchReport report;
};

/// Rows are elements in input order, columns follow the shared index.
SparseMatrix exponent_matrix(const std::vector<ExponentVector>& vectors,
                             std::size_t column_count);

/// Product of (n_j + a)^{k_j}, computed through FieldElement arithmetic.
FieldElement relation_product(const NumberField& K,
                              const std::vector<std::pair<std::int64_t, long>>& terms);
/// Exact check that the product is 1, by integral cross-multiplication.
bool verify_relation(const NumberField& K,
                     const std::vector<std::pair<std::int64_t, long>>& terms);

/// Turns a kernel vector over `elements` into a relation: verified as is,
/// verified after raising a root of unity to its order, a unit candidate
/// carrying its witness, or refuted. Throws ResourceError over the cost cap.
Relation resolve_candidate(const NumberField& K, const std::vector<std::int64_t>& elements,
                           const SparseVec& kvec, const RelationLimits& limits = {});

/// Finds multiplicative dependencies among infinite-order unit candidates by
/// integer-relation search on their logarithmic embeddings; emits only
/// exactly verified relations. Throws PrecisionError if guesses still fail
/// exact verification at limits.prec_max. Already verified inputs are
/// returned unchanged ahead of the new relations.
std::vector<Relation> unit_combine(const NumberField& K, const std::vector<Relation>& candidates,
                                   const RelationLimits& limits = {},
                                   long* precision_used = nullptr);

/// count_smooth - (m + r + 2); positive certifies a relation exists.
std::int64_t existence_margin(std::int64_t count_smooth, std::int64_t column_count,
                              int unit_rank);

/// Full pipeline: sieve, ideal exponents, kernel, resolution, unit combination.
RelationSearch find_relations(const NumberField& K, std::int64_t x, std::uint64_t y,
                              const RelationLimits& limits = {});

/// Relations among an explicit element list with full factorization columns;
/// elements need not be smooth. Used by small-case oracles.
std::vector<Relation> relations_among(const NumberField& K,
                                      const std::vector<std::int64_t>& elements,
                                      const RelationLimits& limits = {});

/// Canonical order: sorted by n, merged, zero exponents dropped, first k > 0.
void normalize_terms(std::vector<std::pair<std::int64_t, long>>& terms);

}  // namespace shiftdep
