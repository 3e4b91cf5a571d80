#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftdep/field.hpp"
#include "shiftdep/linalg.hpp"
#include "shiftdep/sieve.hpp"

namespace shiftdep {

/// Column layout of the exponent map.
///
/// A good column (p, r), p not dividing disc(f), stands for the degree-one
/// prime ideal (p, a + r); it contains n + a exactly when n = r (mod p).
/// Exceptional primes (p | disc) get a single column carrying v_p(Norm),
/// which is still a homomorphism to Z but may merge distinct ideals above p.
/// Columns are numbered good-first, then exceptional, each ascending.
class IdealColumnIndex {
 public:
  IdealColumnIndex() = default;
  IdealColumnIndex(std::vector<std::pair<std::uint64_t, std::uint64_t>> good,
                   std::vector<std::uint64_t> exceptional);

  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& good_columns() const { return good_; }
  const std::vector<std::uint64_t>& exceptional_columns() const { return exceptional_; }
  std::size_t column_count() const { return good_.size() + exceptional_.size(); }

  std::optional<std::size_t> good_column(std::uint64_t p, std::uint64_t r) const;
  std::optional<std::size_t> exceptional_column(std::uint64_t p) const;
  /// "(p:r)" or "[p]".
  std::string label(std::size_t column) const;

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> good_;
  std::vector<std::uint64_t> exceptional_;
};

struct ExponentVector {
  std::int64_t n = 0;
  std::map<std::size_t, long> entries;  // column -> exponent, nonzero only
  bool torsion_safe = true;             // no exceptional column touched

  bool operator==(const ExponentVector&) const = default;
};

IdealColumnIndex build_index(const NumberField& K, const FactorBasePrimes& fb);

ExponentVector ideal_factorize(const NumberField& K, const IdealColumnIndex& index,
                               const SmoothRecord& record);

/// `n,(p:r)^e (p:r)^e [p]^e` with columns in index order.
std::string format_exponent_row(const IdealColumnIndex& index, const ExponentVector& v);
ExponentVector parse_exponent_row(const IdealColumnIndex& index, const std::string& row);

/// Exponent map extended to every prime dividing some |P(n)|: good primes
/// get the column (p, n mod p), exceptional primes a norm-valuation column.
/// Unlike IdealColumnIndex the columns are discovered from the elements.
struct FullExponentMatrix {
  std::vector<std::int64_t> elements;      // rows kept, in input order
  SparseMatrix matrix;
  std::vector<std::string> column_labels;  // "(p:r)" or "[p]"
  std::vector<std::int64_t> dropped;       // values too large to factor
};

FullExponentMatrix full_exponent_matrix(const NumberField& K,
                                        const std::vector<std::int64_t>& elements,
                                        std::size_t digit_cap = 40);
/// Same, reusing sieve records so only cofactors need factoring.
FullExponentMatrix full_exponent_matrix(const NumberField& K,
                                        const std::vector<SmoothRecord>& records,
                                        std::size_t digit_cap = 40);

}  // namespace shiftdep
