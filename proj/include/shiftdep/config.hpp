#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "shiftdep/arith.hpp"
#include "shiftdep/sieve.hpp"

namespace shiftdep {

/// Flat key=value experiment description. Known keys are poly, x, y, tol
/// and seed; every other key lands in `flags`.
struct ExperimentConfig {
  IntPoly poly;
  std::int64_t x = 0;
  std::uint64_t y = 0;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> flags;

  bool operator==(const ExperimentConfig&) const = default;
};

std::string write_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig read_config_file(const std::filesystem::path& path);

/// Factor-base cache text format:
///   poly=<c0,...,cd> y=<y>
///   p:r1,r2,...        one line per prime <= y, ascending
///   # end
void write_factor_base(std::ostream& os, const FactorBasePrimes& fb);
void write_factor_base(const std::filesystem::path& path, const FactorBasePrimes& fb);

/// Parses and validates a cache file against (poly, y). Returns nullopt and
/// writes a warning to `log` if the file is absent, stale, truncated or
/// malformed.
std::optional<FactorBasePrimes> read_factor_base(const std::filesystem::path& path,
                                                 const IntPoly& poly, std::uint64_t y,
                                                 std::ostream& log);

/// $SHIFTDEP_CACHE_DIR, else $XDG_CACHE_HOME/shiftdep, else ~/.cache/shiftdep.
std::filesystem::path cache_dir();
std::filesystem::path factor_base_cache_path(const std::filesystem::path& dir,
                                             const IntPoly& poly, std::uint64_t y);

/// Reads the cached factor base or rebuilds and rewrites it.
FactorBasePrimes cache_io(const std::filesystem::path& dir, const IntPoly& poly,
                          std::uint64_t y, std::ostream& log);

}  // namespace shiftdep
