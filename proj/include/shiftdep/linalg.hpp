#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace shiftdep {

/// Sparse integer vector: (index, value) pairs, index ascending, no zeros.
using SparseVec = std::vector<std::pair<std::size_t, mpz_class>>;

/// Row-major sparse integer matrix.
struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<SparseVec> rows;

  std::size_t row_count() const { return rows.size(); }
};

std::vector<mpz_class> to_dense(const SparseVec& v, std::size_t n);
SparseVec to_sparse(const std::vector<mpz_class>& v);
/// v^T M as a dense vector of length M.cols.
std::vector<mpz_class> left_multiply(const SparseVec& v, const SparseMatrix& m);
mpz_class l1_norm(const SparseVec& v);

/// Basis of the integer left kernel {v : v^T M = 0} of M, one vector per
/// row index space (the "elements"), plus rank(M).
struct KernelBasis {
  std::vector<SparseVec> vectors;
  std::size_t rank = 0;
  std::size_t nullity = 0;
};

struct KernelOptions {
  /// LLL-reduce the basis when nullity and support are at most these.
  std::size_t lll_max_nullity = 48;
  std::size_t lll_max_support = 600;
};

/// Unimodular sparse row reduction: U M = H with H echelon; the rows of U
/// whose H-row vanished form a lattice basis of the left kernel.
KernelBasis kernel_basis(const SparseMatrix& m, const KernelOptions& opts = {});

/// In-place integral LLL (delta = 99/100) on linearly independent rows.
/// All arithmetic is exact; returns false if the input was dependent.
bool lll_reduce(std::vector<std::vector<mpz_class>>& basis);

/// Rank over GF(p) after peeling singleton columns; p < 2^31 prime.
/// Always a lower bound for the rank over Q.
std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);
/// max of rank_mod_p over two fixed large primes.
std::size_t rank_lower_bound(const SparseMatrix& m);
/// Exact rank over Q by fraction-free elimination (dense; small inputs).
std::size_t rank_exact(const SparseMatrix& m);

}  // namespace shiftdep
