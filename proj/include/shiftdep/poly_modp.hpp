#pragma once

#include <cstdint>
#include <vector>

#include "shiftdep/arith.hpp"

namespace shiftdep::modp {

/// Polynomial over F_p, constant term first, trimmed (no leading zeros).
using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPoly& f, std::uint64_t p);
int degree(const Poly& f);

Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
/// Remainder of a modulo b (b nonzero).
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
Poly quot(const Poly& a, const Poly& b, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly make_monic(const Poly& a, std::uint64_t p);
/// base^e mod m.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t p);
Poly derivative(const Poly& f, std::uint64_t p);

std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p);

/// All roots in [0, p) by direct evaluation.
std::vector<std::uint64_t> roots_exhaustive(const Poly& f, std::uint64_t p);

/// All roots in [0, p) via gcd with x^p - x and equal-degree splitting.
/// Deterministic: the splitting shifts follow a fixed sequence.
std::vector<std::uint64_t> roots_splitting(const Poly& f, std::uint64_t p);

/// Degrees of the irreducible factors of a squarefree f mod p
/// (distinct-degree factorization), ascending with multiplicity.
std::vector<int> factor_degrees(const Poly& f, std::uint64_t p);

}  // namespace shiftdep::modp
