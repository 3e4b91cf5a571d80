#include "shiftdep/ideals.hpp"

#include <algorithm>
#include <sstream>

#include "shiftdep/errors.hpp"

namespace shiftdep {

IdealColumnIndex::IdealColumnIndex(std::vector<std::pair<std::uint64_t, std::uint64_t>> good,
                                   std::vector<std::uint64_t> exceptional)
    : good_(std::move(good)), exceptional_(std::move(exceptional)) {
  std::sort(good_.begin(), good_.end());
  good_.erase(std::unique(good_.begin(), good_.end()), good_.end());
  std::sort(exceptional_.begin(), exceptional_.end());
  exceptional_.erase(std::unique(exceptional_.begin(), exceptional_.end()), exceptional_.end());
}

std::optional<std::size_t> IdealColumnIndex::good_column(std::uint64_t p,
                                                         std::uint64_t r) const {
  auto it = std::lower_bound(good_.begin(), good_.end(), std::pair{p, r});
  if (it == good_.end() || *it != std::pair{p, r}) return std::nullopt;
  return static_cast<std::size_t>(it - good_.begin());
}

std::optional<std::size_t> IdealColumnIndex::exceptional_column(std::uint64_t p) const {
  auto it = std::lower_bound(exceptional_.begin(), exceptional_.end(), p);
  if (it == exceptional_.end() || *it != p) return std::nullopt;
  return good_.size() + static_cast<std::size_t>(it - exceptional_.begin());
}

std::string IdealColumnIndex::label(std::size_t column) const {
  if (column < good_.size())
    return "(" + std::to_string(good_[column].first) + ":" +
           std::to_string(good_[column].second) + ")";
  return "[" + std::to_string(exceptional_.at(column - good_.size())) + "]";
}

IdealColumnIndex build_index(const NumberField& K, const FactorBasePrimes& fb) {
  if (fb.poly != K.norm_poly())
    throw ArgumentError("build_index: factor base was built for another polynomial");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> good;
  std::vector<std::uint64_t> exceptional;
  for (std::size_t k = 0; k < fb.primes.size(); ++k) {
    const std::uint64_t p = fb.primes[k];
    if (K.is_exceptional(p)) {
      exceptional.push_back(p);
      continue;
    }
    for (std::uint32_t r : fb.roots[k]) good.emplace_back(p, r);
  }
  return IdealColumnIndex(std::move(good), std::move(exceptional));
}

ExponentVector ideal_factorize(const NumberField& K, const IdealColumnIndex& index,
                               const SmoothRecord& record) {
  if (!record.is_smooth)
    throw ArgumentError("ideal_factorize: record n=" + std::to_string(record.n) +
                        " is not smooth");
  ExponentVector v;
  v.n = record.n;
  for (auto [p, e] : record.factors) {
    if (K.is_exceptional(p)) {
      auto col = index.exceptional_column(p);
      if (!col)
        throw ConsistencyError("exceptional prime " + std::to_string(p) + " missing from index");
      v.entries[*col] += e;
      v.torsion_safe = false;
      continue;
    }
    const std::int64_t np = static_cast<std::int64_t>(p);
    const auto r = static_cast<std::uint64_t>(((record.n % np) + np) % np);
    auto col = index.good_column(p, r);
    if (!col)
      throw ConsistencyError("n=" + std::to_string(record.n) + " divisible by good prime " +
                             std::to_string(p) + " with no matching root column");
    v.entries[*col] += e;
  }
  return v;
}

std::string format_exponent_row(const IdealColumnIndex& index, const ExponentVector& v) {
  std::ostringstream os;
  os << v.n << ',';
  bool first = true;
  for (auto [col, e] : v.entries) {
    if (!first) os << ' ';
    os << index.label(col) << '^' << e;
    first = false;
  }
  return os.str();
}

ExponentVector parse_exponent_row(const IdealColumnIndex& index, const std::string& row) {
  ExponentVector v;
  auto comma = row.find(',');
  if (comma == std::string::npos) throw ArgumentError("exponent row lacks ','");
  v.n = std::stoll(row.substr(0, comma));
  std::istringstream is(row.substr(comma + 1));
  std::string tok;
  while (is >> tok) {
    auto caret = tok.find('^');
    if (caret == std::string::npos || tok.size() < 3)
      throw ArgumentError("bad exponent token '" + tok + "'");
    std::string lab = tok.substr(0, caret);
    long e = std::stol(tok.substr(caret + 1));
    std::optional<std::size_t> col;
    if (lab.front() == '(') {
      auto colon = lab.find(':');
      col = index.good_column(std::stoull(lab.substr(1, colon - 1)),
                              std::stoull(lab.substr(colon + 1, lab.size() - colon - 2)));
    } else if (lab.front() == '[') {
      col = index.exceptional_column(std::stoull(lab.substr(1, lab.size() - 2)));
      v.torsion_safe = false;
    }
    if (!col) throw ArgumentError("unknown column '" + lab + "'");
    v.entries[*col] = e;
  }
  return v;
}

namespace {

struct ColumnKey {
  mpz_class p;
  mpz_class r;  // -1 marks the exceptional column
  bool operator<(const ColumnKey& o) const {
    if (int c = cmp(p, o.p)) return c < 0;
    return r < o.r;
  }
};

void append_row(const NumberField& K, std::int64_t n, const Factorization& fac,
                std::map<ColumnKey, std::size_t>& columns,
                std::vector<std::map<ColumnKey, long>>& staged) {
  std::map<ColumnKey, long> row;
  for (const auto& [p, e] : fac) {
    const bool exceptional = mpz_divisible_p(K.disc().get_mpz_t(), p.get_mpz_t()) != 0;
    mpz_class r = -1;
    if (!exceptional) mpz_fdiv_r(r.get_mpz_t(), mpz_class(static_cast<long>(n)).get_mpz_t(), p.get_mpz_t());
    ColumnKey key{p, r};
    columns.emplace(key, 0);
    row[key] += e;
  }
  staged.push_back(std::move(row));
}

FullExponentMatrix assemble(std::vector<std::int64_t> kept, std::vector<std::int64_t> dropped,
                            std::map<ColumnKey, std::size_t>& columns,
                            const std::vector<std::map<ColumnKey, long>>& staged) {
  FullExponentMatrix out;
  std::size_t c = 0;
  for (auto& [key, idx] : columns) {
    idx = c++;
    out.column_labels.push_back(key.r < 0 ? "[" + key.p.get_str() + "]"
                                          : "(" + key.p.get_str() + ":" + key.r.get_str() + ")");
  }
  out.matrix.cols = columns.size();
  for (const auto& row : staged) {
    SparseVec v;
    for (const auto& [key, e] : row) v.emplace_back(columns.at(key), mpz_class(e));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.matrix.rows.push_back(std::move(v));
  }
  out.elements = std::move(kept);
  out.dropped = std::move(dropped);
  return out;
}

}  // namespace

FullExponentMatrix full_exponent_matrix(const NumberField& K,
                                        const std::vector<std::int64_t>& elements,
                                        std::size_t digit_cap) {
  std::map<ColumnKey, std::size_t> columns;
  std::vector<std::map<ColumnKey, long>> staged;
  std::vector<std::int64_t> kept, dropped;
  for (std::int64_t n : elements) {
    mpz_class v = K.norm_of_shift(mpz_class(static_cast<long>(n)));
    auto fac = factor_integer(v, digit_cap);
    if (!fac) {
      dropped.push_back(n);
      continue;
    }
    kept.push_back(n);
    append_row(K, n, *fac, columns, staged);
  }
  return assemble(std::move(kept), std::move(dropped), columns, staged);
}

FullExponentMatrix full_exponent_matrix(const NumberField& K,
                                        const std::vector<SmoothRecord>& records,
                                        std::size_t digit_cap) {
  std::map<ColumnKey, std::size_t> columns;
  std::vector<std::map<ColumnKey, long>> staged;
  std::vector<std::int64_t> kept, dropped;
  for (const auto& rec : records) {
    Factorization fac;
    for (auto [p, e] : rec.factors) fac.emplace_back(mpz_class(static_cast<unsigned long>(p)), e);
    if (rec.cofactor != 1) {
      auto rest = factor_integer(rec.cofactor, digit_cap);
      if (!rest) {
        dropped.push_back(rec.n);
        continue;
      }
      fac.insert(fac.end(), rest->begin(), rest->end());
    }
    kept.push_back(rec.n);
    append_row(K, rec.n, fac, columns, staged);
  }
  return assemble(std::move(kept), std::move(dropped), columns, staged);
}

}  // namespace shiftdep
