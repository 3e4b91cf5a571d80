#include "shiftdep/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "shiftdep/errors.hpp"

namespace shiftdep {

std::vector<mpz_class> to_dense(const SparseVec& v, std::size_t n) {
  std::vector<mpz_class> out(n, 0);
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

SparseVec to_sparse(const std::vector<mpz_class>& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace_back(i, v[i]);
  return out;
}

std::vector<mpz_class> left_multiply(const SparseVec& v, const SparseMatrix& m) {
  std::vector<mpz_class> out(m.cols, 0);
  for (const auto& [i, k] : v)
    for (const auto& [c, e] : m.rows.at(i)) out[c] += k * e;
  return out;
}

mpz_class l1_norm(const SparseVec& v) {
  mpz_class s = 0;
  for (const auto& [i, x] : v) s += abs(x);
  return s;
}

namespace {

const mpz_class* entry(const SparseVec& v, std::size_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != v.end() && it->first == col) ? &it->second : nullptr;
}

// a - q * b
SparseVec axpy(const SparseVec& a, const mpz_class& q, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -q * b[j].second);
      ++j;
    } else {
      mpz_class v = a[i].second - q * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

mpz_class nearest_quotient(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += (sgn(a) == sgn(b)) ? 1 : -1;
  return q;
}

struct WorkRow {
  SparseVec a;
  SparseVec u;
  bool pivot = false;
};

void normalize_sign(SparseVec& v) {
  if (!v.empty() && v.front().second < 0)
    for (auto& [i, x] : v) x = -x;
}

mpz_class norm2(const SparseVec& v) {
  mpz_class s = 0;
  for (const auto& [i, x] : v) s += x * x;
  return s;
}

void greedy_pair_reduce(std::vector<SparseVec>& vs) {
  for (int pass = 0; pass < 4; ++pass) {
    bool changed = false;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i == j) continue;
        mpz_class base = norm2(vs[j]);
        for (int s : {1, -1}) {
          SparseVec cand = axpy(vs[j], mpz_class(s), vs[i]);
          if (norm2(cand) < base) {
            vs[j] = std::move(cand);
            changed = true;
            break;
          }
        }
      }
    }
    if (!changed) break;
  }
}

}  // namespace

KernelBasis kernel_basis(const SparseMatrix& m, const KernelOptions& opts) {
  const std::size_t n = m.rows.size();
  std::vector<WorkRow> rows(n);
  std::vector<std::size_t> count(m.cols, 0);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].a = m.rows[i];
    rows[i].u = SparseVec{{i, mpz_class(1)}};
    for (const auto& [c, x] : m.rows[i]) {
      if (c >= m.cols) throw ArgumentError("kernel_basis: column index out of range");
      ++count[c];
    }
  }
  std::vector<std::size_t> order(m.cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return count[a] < count[b]; });

  KernelBasis kb;
  std::vector<std::size_t> active;
  for (std::size_t c : order) {
    if (count[c] == 0) continue;
    for (;;) {
      active.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (!rows[i].pivot && entry(rows[i].a, c)) active.push_back(i);
      if (active.empty()) break;
      auto piv = *std::min_element(active.begin(), active.end(), [&](std::size_t x, std::size_t y) {
        int cmp = mpz_cmpabs(entry(rows[x].a, c)->get_mpz_t(), entry(rows[y].a, c)->get_mpz_t());
        if (cmp != 0) return cmp < 0;
        return rows[x].a.size() + rows[x].u.size() < rows[y].a.size() + rows[y].u.size();
      });
      if (active.size() == 1) {
        rows[piv].pivot = true;
        ++kb.rank;
        break;
      }
      const mpz_class pv = *entry(rows[piv].a, c);
      for (std::size_t j : active) {
        if (j == piv) continue;
        mpz_class q = nearest_quotient(*entry(rows[j].a, c), pv);
        rows[j].a = axpy(rows[j].a, q, rows[piv].a);
        rows[j].u = axpy(rows[j].u, q, rows[piv].u);
      }
    }
  }
  for (auto& r : rows) {
    if (r.pivot) continue;
    if (!r.a.empty()) throw ConsistencyError("kernel_basis: non-pivot row did not vanish");
    kb.vectors.push_back(std::move(r.u));
  }
  kb.nullity = kb.vectors.size();

  std::set<std::size_t> support;
  for (const auto& v : kb.vectors)
    for (const auto& [i, x] : v) support.insert(i);
  if (!kb.vectors.empty() && kb.nullity <= opts.lll_max_nullity &&
      support.size() <= opts.lll_max_support) {
    std::vector<std::size_t> sup(support.begin(), support.end());
    std::vector<std::vector<mpz_class>> dense;
    for (const auto& v : kb.vectors) {
      std::vector<mpz_class> row(sup.size(), 0);
      for (const auto& [i, x] : v)
        row[static_cast<std::size_t>(std::lower_bound(sup.begin(), sup.end(), i) - sup.begin())] = x;
      dense.push_back(std::move(row));
    }
    if (!lll_reduce(dense)) throw ConsistencyError("kernel_basis: dependent kernel rows");
    for (std::size_t k = 0; k < dense.size(); ++k) {
      SparseVec v;
      for (std::size_t j = 0; j < sup.size(); ++j)
        if (dense[k][j] != 0) v.emplace_back(sup[j], dense[k][j]);
      kb.vectors[k] = std::move(v);
    }
  } else {
    greedy_pair_reduce(kb.vectors);
  }
  for (auto& v : kb.vectors) normalize_sign(v);
  return kb;
}

bool lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  // Integral LLL after de Weger (Cohen, GTM 138, Alg. 2.6.7), 1-based.
  const std::size_t n = b.size();
  if (n <= 1) return n == 0 || std::any_of(b[0].begin(), b[0].end(), [](auto& x) { return x != 0; });
  auto dot = [&](std::size_t i, std::size_t j) {
    mpz_class s = 0;
    for (std::size_t t = 0; t < b[i - 1].size(); ++t)
      mpz_addmul(s.get_mpz_t(), b[i - 1][t].get_mpz_t(), b[j - 1][t].get_mpz_t());
    return s;
  };
  std::vector<mpz_class> d(n + 1, 0);
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  d[0] = 1;
  d[1] = dot(1, 1);
  if (d[1] == 0) return false;
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t kk, std::size_t l) {
    if (2 * abs(lam[kk][l]) > d[l]) {
      mpz_class q = nearest_quotient(lam[kk][l], d[l]);
      for (std::size_t t = 0; t < b[kk - 1].size(); ++t) b[kk - 1][t] -= q * b[l - 1][t];
      lam[kk][l] -= q * d[l];
      for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
    }
  };
  auto swap_k = [&](std::size_t kk) {
    std::swap(b[kk - 1], b[kk - 2]);
    for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    mpz_class l = lam[kk][kk - 1];
    mpz_class B = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      mpz_class t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (B * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(k, j);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (d[k] == 0) return false;
        }
      }
    }
    red(k, k - 1);
    if (100 * d[k] * d[k - 2] < 99 * d[k - 1] * d[k - 1] - 100 * lam[k][k - 1] * lam[k][k - 1]) {
      swap_k(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 2; l >= 1; --l) red(k, l);
      ++k;
    }
  }
  return true;
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
  const std::size_t n = m.rows.size();
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> rows(n);
  std::vector<std::size_t> count(m.cols, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [c, x] : m.rows[i]) {
      std::uint64_t v = mpz_fdiv_ui(x.get_mpz_t(), p);
      if (v) {
        rows[i].emplace_back(c, v);
        ++count[c];
      }
    }
  }
  std::vector<std::vector<std::size_t>> col_rows(m.cols);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [c, v] : rows[i]) col_rows[c].push_back(i);

  // A column met by exactly one live row makes that row independent of the
  // rest: count it and drop the row.
  std::vector<bool> alive(n, true);
  std::size_t rank = 0;
  std::vector<std::size_t> stack;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (count[c] == 1) stack.push_back(c);
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    if (count[c] != 1) continue;
    std::size_t r = *std::find_if(col_rows[c].begin(), col_rows[c].end(),
                                  [&](std::size_t i) { return alive[i]; });
    alive[r] = false;
    ++rank;
    for (const auto& [cc, v] : rows[r])
      if (--count[cc] == 1) stack.push_back(cc);
  }

  std::vector<std::size_t> colmap(m.cols, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (count[c] >= 2) colmap[c] = ncols++;
  std::vector<std::vector<std::uint32_t>> dense;
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i] || rows[i].empty()) continue;
    std::vector<std::uint32_t> row(ncols, 0);
    bool any = false;
    for (const auto& [c, v] : rows[i]) {
      if (colmap[c] == SIZE_MAX) continue;
      row[colmap[c]] = static_cast<std::uint32_t>(v);
      any = true;
    }
    if (any) dense.push_back(std::move(row));
  }

  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < dense.size(); ++c) {
    std::size_t piv = r;
    while (piv < dense.size() && dense[piv][c] == 0) ++piv;
    if (piv == dense.size()) continue;
    std::swap(dense[r], dense[piv]);
    const std::uint64_t inv = [&] {
      std::uint64_t base = dense[r][c], e = p - 2, res = 1;
      while (e) {
        if (e & 1) res = res * base % p;
        base = base * base % p;
        e >>= 1;
      }
      return res;
    }();
    for (std::size_t j = c; j < ncols; ++j)
      dense[r][j] = static_cast<std::uint32_t>(dense[r][j] * inv % p);
    for (std::size_t i = r + 1; i < dense.size(); ++i) {
      const std::uint64_t f = dense[i][c];
      if (!f) continue;
      auto& row = dense[i];
      const auto& prow = dense[r];
      for (std::size_t j = c; j < ncols; ++j)
        if (prow[j]) row[j] = static_cast<std::uint32_t>((row[j] + (p - f) * prow[j]) % p);
    }
    ++r;
  }
  return rank + r;
}

std::size_t rank_lower_bound(const SparseMatrix& m) {
  return std::max(rank_mod_p(m, 2147483647u), rank_mod_p(m, 2147483629u));
}

std::size_t rank_exact(const SparseMatrix& m) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& r : m.rows) a.push_back(to_dense(r, m.cols));
  const std::size_t n = a.size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < m.cols && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j) {
        a[i][j] = a[i][j] * a[rank][c] - a[i][c] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace shiftdep
