#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shiftdep {

/// Dense integer polynomial, constant term first.
using IntPoly = std::vector<mpz_class>;
/// Dense rational polynomial, constant term first.
using RatPoly = std::vector<mpq_class>;

/// Prime factorization as ascending (prime, exponent) pairs.
using Factorization = std::vector<std::pair<mpz_class, unsigned>>;

int degree(const IntPoly& p);
int degree(const RatPoly& p);
void trim(IntPoly& p);
void trim(RatPoly& p);

mpz_class eval(const IntPoly& p, const mpz_class& n);

/// Parses "c0,c1,...,cd" (constant term first, highest degree last).
IntPoly parse_poly(std::string_view text);
std::string format_poly(const IntPoly& p);
/// Human-readable form, highest degree first, e.g. "x^2 + x + 1".
std::string pretty_poly(const IntPoly& p, char var = 'x');

bool is_probable_prime(const mpz_class& n);

/// Full factorization of |n| for n != 0. Returns nullopt when a composite
/// cofactor longer than max_digits decimal digits resists Pollard rho.
std::optional<Factorization> factor_integer(const mpz_class& n,
                                            std::size_t max_digits = 40);

/// Distinct prime divisors of |n| (n != 0); same digit cap semantics.
std::optional<std::vector<mpz_class>> prime_divisors(
    const mpz_class& n, std::size_t max_digits = 40);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Reduction of an integer into [0, m).
std::uint64_t mod_u64(const mpz_class& a, std::uint64_t m);

/// Euler's totient for small arguments.
std::uint64_t totient(std::uint64_t n);

}  // namespace shiftdep
