#include "shiftdep/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shiftdep/errors.hpp"

namespace shiftdep {

std::string write_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  char tol[64];
  std::snprintf(tol, sizeof tol, "%.17g", cfg.tol);
  os << "poly=" << format_poly(cfg.poly) << '\n'
     << "x=" << cfg.x << '\n'
     << "y=" << cfg.y << '\n'
     << "tol=" << tol << '\n'
     << "seed=" << cfg.seed << '\n';
  for (const auto& [k, v] : cfg.flags) os << k << '=' << v << '\n';
  return os.str();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ArgumentError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    try {
      if (key == "poly")
        cfg.poly = value.empty() ? IntPoly{} : parse_poly(value);
      else if (key == "x")
        cfg.x = std::stoll(value);
      else if (key == "y")
        cfg.y = std::stoull(value);
      else if (key == "tol")
        cfg.tol = std::stod(value);
      else if (key == "seed")
        cfg.seed = std::stoull(value);
      else
        cfg.flags[key] = value;
    } catch (const std::logic_error&) {
      throw ArgumentError("config line " + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  return cfg;
}

ExperimentConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void write_factor_base(std::ostream& os, const FactorBasePrimes& fb) {
  os << "poly=" << format_poly(fb.poly) << " y=" << fb.y << '\n';
  for (std::size_t k = 0; k < fb.primes.size(); ++k) {
    os << fb.primes[k] << ':';
    for (std::size_t i = 0; i < fb.roots[k].size(); ++i) {
      if (i) os << ',';
      os << fb.roots[k][i];
    }
    os << '\n';
  }
  os << "# end\n";
}

void write_factor_base(const std::filesystem::path& path, const FactorBasePrimes& fb) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    write_factor_base(out, fb);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<FactorBasePrimes> read_factor_base(const std::filesystem::path& path,
                                                 const IntPoly& poly, std::uint64_t y,
                                                 std::ostream& log) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  auto reject = [&](const std::string& why) -> std::optional<FactorBasePrimes> {
    log << "warning: ignoring factor-base cache " << path.string() << ": " << why << '\n';
    return std::nullopt;
  };
  std::string line;
  if (!std::getline(in, line)) return reject("empty file");
  const std::string expected = "poly=" + format_poly(poly) + " y=" + std::to_string(y);
  if (line != expected) return reject("stale header '" + line + "'");

  FactorBasePrimes fb;
  fb.poly = poly;
  fb.y = y;
  const auto expected_primes = primes_up_to(y);
  bool ended = false;
  while (std::getline(in, line)) {
    if (line == "# end") {
      ended = true;
      break;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) return reject("malformed line '" + line + "'");
    std::uint64_t p = 0;
    std::vector<std::uint32_t> roots;
    try {
      p = std::stoull(line.substr(0, colon));
      std::string rest = line.substr(colon + 1);
      std::size_t pos = 0;
      while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        roots.push_back(static_cast<std::uint32_t>(std::stoul(rest.substr(pos, comma - pos))));
        pos = comma + 1;
      }
    } catch (const std::logic_error&) {
      return reject("malformed line '" + line + "'");
    }
    for (std::uint32_t r : roots)
      if (r >= p || mod_u64(eval(poly, mpz_class(static_cast<unsigned long>(r))), p) != 0)
        return reject("entry " + std::to_string(p) + ":" + std::to_string(r) + " is not a root");
    fb.primes.push_back(static_cast<std::uint32_t>(p));
    fb.roots.push_back(std::move(roots));
  }
  if (!ended) return reject("truncated (missing end marker)");
  if (fb.primes != expected_primes) return reject("prime list does not match y");
  return fb;
}

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("SHIFTDEP_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "shiftdep";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "shiftdep";
  return std::filesystem::temp_directory_path() / "shiftdep";
}

std::filesystem::path factor_base_cache_path(const std::filesystem::path& dir,
                                             const IntPoly& poly, std::uint64_t y) {
  std::string name = "fb_" + format_poly(poly) + "_y" + std::to_string(y) + ".txt";
  for (char& c : name)
    if (c == ',') c = '_';
  return dir / name;
}

FactorBasePrimes cache_io(const std::filesystem::path& dir, const IntPoly& poly,
                          std::uint64_t y, std::ostream& log) {
  const auto path = factor_base_cache_path(dir, poly, y);
  if (auto fb = read_factor_base(path, poly, y, log)) return *fb;
  FactorBasePrimes fb = build_factor_base(poly, y);
  try {
    write_factor_base(path, fb);
  } catch (const std::exception& e) {
    log << "warning: factor-base cache not written: " << e.what() << '\n';
  }
  return fb;
}

}  // namespace shiftdep
