#include "shiftdep/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "shiftdep/errors.hpp"
#include "shiftdep/poly_modp.hpp"

namespace shiftdep {

namespace {

constexpr std::uint64_t kScanLimit = 1u << 16;

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint64_t y) {
  if (y < 2) throw ArgumentError("primes_up_to: y must be >= 2");
  if (y > 0xffffffffULL) throw ArgumentError("primes_up_to: y must fit in 32 bits");
  // odd-only sieve: index i stands for 2i+1
  const std::uint64_t half = (y - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= y; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p) / 2; j <= half; j += p) composite[j] = true;
  }
  std::vector<std::uint32_t> out{2};
  for (std::uint64_t i = 1; i <= half; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(2 * i + 1));
  return out;
}

std::vector<std::uint32_t> poly_roots_mod_p(const IntPoly& P, std::uint64_t p) {
  if (p < 2) throw ArgumentError("poly_roots_mod_p: p must be prime");
  modp::Poly f = modp::reduce(P, p);
  if (f.empty())
    throw DegenerateInput("polynomial vanishes identically mod " + std::to_string(p));
  std::vector<std::uint64_t> roots =
      p < kScanLimit ? modp::roots_exhaustive(f, p) : modp::roots_splitting(f, p);
  std::vector<std::uint32_t> out;
  for (std::uint64_t r : roots) {
    if (modp::eval(f, r, p) != 0)
      throw ConsistencyError("root finder returned a non-root mod " + std::to_string(p));
    out.push_back(static_cast<std::uint32_t>(r));
  }
  return out;
}

const std::vector<std::uint32_t>* FactorBasePrimes::roots_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes.begin(), primes.end(), p);
  if (it == primes.end() || *it != p) return nullptr;
  return &roots[static_cast<std::size_t>(it - primes.begin())];
}

FactorBasePrimes build_factor_base(const IntPoly& P, std::uint64_t y) {
  FactorBasePrimes fb;
  fb.poly = P;
  fb.y = y;
  fb.primes = primes_up_to(y);
  fb.roots.reserve(fb.primes.size());
  for (std::uint32_t p : fb.primes) fb.roots.push_back(poly_roots_mod_p(P, p));
  return fb;
}

IntPoly linear_bypass_poly() { return IntPoly{0, 1}; }

namespace {

void sieve_segment(const FactorBasePrimes& fb, std::int64_t lo, std::int64_t hi,
                   const SieveOptions& opts, std::vector<SmoothRecord>& out) {
  for (std::int64_t n = lo; n < hi; ++n) {
    SmoothRecord& rec = out[static_cast<std::size_t>(n)];
    rec.n = n;
    mpz_class v = eval(fb.poly, mpz_class(static_cast<long>(n)));
    rec.sign = v < 0 ? -1 : 1;
    rec.value = abs(v);
    rec.cofactor = rec.value;
  }
  for (std::size_t k = 0; k < fb.primes.size(); ++k) {
    const std::uint32_t p = fb.primes[k];
    for (std::uint32_t r : fb.roots[k]) {
      std::int64_t start = lo + ((static_cast<std::int64_t>(r) - lo) % p + p) % p;
      for (std::int64_t n = start; n < hi; n += p) {
        SmoothRecord& rec = out[static_cast<std::size_t>(n)];
        if (rec.cofactor == 0) continue;
        std::uint32_t e = 0;
        while (mpz_divisible_ui_p(rec.cofactor.get_mpz_t(), p)) {
          mpz_divexact_ui(rec.cofactor.get_mpz_t(), rec.cofactor.get_mpz_t(), p);
          ++e;
        }
        if (e) rec.factors.emplace_back(p, e);
      }
    }
  }
  for (std::int64_t n = lo; n < hi; ++n) {
    SmoothRecord& rec = out[static_cast<std::size_t>(n)];
    if (rec.cofactor == 0) {
      rec.is_smooth = false;
      rec.largest_prime = 0;
      rec.largest_known = false;
      continue;
    }
    rec.is_smooth = rec.cofactor == 1;
    if (rec.is_smooth) {
      rec.largest_prime = rec.factors.empty() ? 1UL : rec.factors.back().first;
    } else if (!opts.resolve_largest_prime) {
      rec.largest_prime = rec.cofactor;
      rec.largest_known = false;
    } else {
      auto fac = factor_integer(rec.cofactor, opts.cofactor_digit_cap);
      if (fac) {
        rec.largest_prime = fac->back().first;
      } else {
        rec.largest_prime = rec.cofactor;
        rec.largest_known = false;
      }
    }
  }
}

}  // namespace

std::vector<SmoothRecord> sieve_smooth(const FactorBasePrimes& fb, std::int64_t x,
                                       const SieveOptions& opts) {
  if (x < 2) throw ArgumentError("sieve_smooth: x must be >= 2");
  if (fb.y < 2) throw ArgumentError("sieve_smooth: y must be >= 2");
  std::vector<SmoothRecord> out(static_cast<std::size_t>(x));
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(x)));
  if (threads == 1) {
    sieve_segment(fb, 0, x, opts, out);
    return out;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (x + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::int64_t lo = t * chunk, hi = std::min<std::int64_t>(x, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { sieve_segment(fb, lo, hi, opts, out); });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<SmoothRecord> sieve_smooth(const NumberField& K, std::int64_t x,
                                       std::uint64_t y, const SieveOptions& opts) {
  if (x < 2 || y < 2) throw ArgumentError("sieve_smooth: x and y must be >= 2");
  return sieve_smooth(build_factor_base(K.norm_poly(), y), x, opts);
}

std::vector<SmoothRecord> sieve_smooth_linear(std::int64_t x, std::uint64_t y,
                                              const SieveOptions& opts) {
  if (x < 2 || y < 2) throw ArgumentError("sieve_smooth: x and y must be >= 2");
  return sieve_smooth(build_factor_base(linear_bypass_poly(), y), x, opts);
}

std::int64_t psi_count(const std::vector<SmoothRecord>& records,
                       std::int64_t range_start) {
  return std::count_if(records.begin(), records.end(), [&](const SmoothRecord& r) {
    return r.n >= range_start && r.is_smooth;
  });
}

std::vector<ConjectureRow> conjecture_tables(const IntPoly& P, int degree,
                                             const std::vector<std::int64_t>& x_grid,
                                             const std::vector<std::uint64_t>& y_grid,
                                             const RhoGrid& rho,
                                             const SieveOptions& opts) {
  if (x_grid.empty() || y_grid.empty())
    throw ArgumentError("conjecture_tables: grids must be nonempty");
  const std::int64_t x_max = *std::max_element(x_grid.begin(), x_grid.end());
  const std::uint64_t y_max = *std::max_element(y_grid.begin(), y_grid.end());
  SieveOptions o = opts;
  o.resolve_largest_prime = false;  // smoothness at y <= y_max needs only smooth records
  auto records = sieve_smooth(build_factor_base(P, y_max), x_max, o);

  std::vector<ConjectureRow> rows;
  for (std::int64_t x : x_grid) {
    for (std::uint64_t y : y_grid) {
      if (x < 2 || y < 2) throw ArgumentError("conjecture_tables: x, y must be >= 2");
      ConjectureRow row;
      row.x = x;
      row.y = y;
      for (std::int64_t n = 1; n < x; ++n) {
        const auto& r = records[static_cast<std::size_t>(n)];
        if (r.is_smooth && r.largest_prime <= y) ++row.psi;
      }
      row.u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
      const double ref = rho_eval(rho, degree * row.u);
      row.rho_ratio = static_cast<double>(row.psi) / (static_cast<double>(x) * ref);
      row.growth = static_cast<double>(row.psi) * std::log(static_cast<double>(y)) /
                   static_cast<double>(y);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ConjectureRow> conjecture_tables(const NumberField& K,
                                             const std::vector<std::int64_t>& x_grid,
                                             const std::vector<std::uint64_t>& y_grid,
                                             const RhoGrid& rho,
                                             const SieveOptions& opts) {
  return conjecture_tables(K.norm_poly(), K.degree(), x_grid, y_grid, rho, opts);
}

}  // namespace shiftdep
