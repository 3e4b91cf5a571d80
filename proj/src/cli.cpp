#include "shiftdep/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "shiftdep/config.hpp"
#include "shiftdep/dickman.hpp"
#include "shiftdep/dimension.hpp"
#include "shiftdep/errors.hpp"
#include "shiftdep/field.hpp"
#include "shiftdep/relations.hpp"
#include "shiftdep/sieve.hpp"

namespace shiftdep::cli {

std::string fixed(double v, int digits) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

namespace {

std::vector<std::int64_t> parse_grid(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ArgumentError("bad grid entry '" + item + "'");
    }
  }
  if (out.empty()) throw ArgumentError("empty grid");
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ArgumentError("cannot open " + path + " for writing");
  return os;
}

std::string factor_tokens(const SmoothRecord& r) {
  std::string s;
  for (const auto& [p, e] : r.factors) {
    if (!s.empty()) s += ' ';
    s += std::to_string(p) + '^' + std::to_string(e);
  }
  if (r.cofactor > 1) {
    if (!s.empty()) s += ' ';
    s += '[' + r.cofactor.get_str() + ']';
  }
  return s;
}

std::string terms_string(const Relation& rel) {
  std::string s;
  for (const auto& [n, k] : rel.terms) {
    if (!s.empty()) s += " * ";
    s += "(" + std::to_string(n) + "+a)^" + std::to_string(k);
  }
  return s + " = 1";
}

nlohmann::json relations_json(const std::vector<Relation>& rels) {
  auto arr = nlohmann::json::array();
  for (const auto& rel : rels) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [n, k] : rel.terms) terms.push_back({n, k});
    arr.push_back({{"terms", terms},
                   {"status", to_string(rel.status)},
                   {"product_check", rel.status == RelationStatus::verified ? "1" : "?"}});
  }
  return arr;
}

/// Options shared by every subcommand that reads a polynomial.
struct Common {
  std::string poly;
  std::int64_t x = 0;
  std::uint64_t y = 0;
  unsigned threads = 1;
  std::int64_t max_records = 20'000'000;  // one in-memory record per n
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "worker threads");
  sub->add_option("--max-records", c.max_records, "refuse runs needing more records than this");
}

void check_records(const Common& c, std::int64_t x) {
  if (x > c.max_records)
    throw ResourceError("x = " + std::to_string(x) + " exceeds the record cap " +
                        std::to_string(c.max_records) + " (raise --max-records)");
}

/// Config entries become --key value arguments for the chosen subcommand,
/// unless the command line already sets them.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ArgumentError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const ExperimentConfig cfg = parse_config(ss.str());  // validates the file

  std::map<std::string, std::string> raw;
  std::istringstream lines(ss.str());
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    raw[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (raw.count("poly")) raw["poly"] = format_poly(cfg.poly);

  std::size_t sub_pos = rest.size();
  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < rest.size(); ++i) {
    try {
      sub = app.get_subcommand(rest[i]);
      sub_pos = i;
      break;
    } catch (const CLI::OptionNotFound&) {
    }
  }
  if (!sub) return rest;

  std::vector<std::string> extra;
  for (const auto& [key, value] : raw) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) continue;
    bool given = false;
    for (std::size_t i = sub_pos + 1; i < rest.size(); ++i)
      if (rest[i] == flag || rest[i].rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;
    if (opt->get_expected_max() == 0) {
      if (value == "1" || value == "true") extra.push_back(flag);
    } else {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, extra.begin(), extra.end());
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smooth shifts, multiplicative relations and log-span dimensions", "shiftdep"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value file supplying defaults");

  // rho
  double rho_u = 0.0, rho_tol = 1e-9;
  auto* rho = app.add_subcommand("rho", "Dickman rho(u)");
  rho->add_option("--u", rho_u, "argument, u >= 0")->required();
  rho->add_option("--tol", rho_tol, "absolute tolerance");

  // sieve
  Common sv;
  std::string sieve_csv;
  bool sieve_linear = false, no_cache = false;
  auto* sieve = app.add_subcommand("sieve", "count n in [1,x) with P(n) y-smooth");
  sieve->add_option("--poly", sv.poly, "monic f, coefficients constant term first");
  sieve->add_option("--x", sv.x, "sieve 0 <= n < x")->required();
  sieve->add_option("--y", sv.y, "smoothness bound")->required();
  sieve->add_option("--csv", sieve_csv, "write one row per n");
  add_common(sieve, sv);
  sieve->add_flag("--linear", sieve_linear, "degree-one bypass P(n) = n");
  sieve->add_flag("--no-cache", no_cache, "do not read or write the factor-base cache");

  // relations
  Common rl;
  bool include_exceptional = false;
  std::size_t max_relations = 64;
  std::string rel_json;
  auto* relations = app.add_subcommand("relations", "exactly verified multiplicative relations");
  relations->add_option("--poly", rl.poly, "monic f, coefficients constant term first")->required();
  relations->add_option("--x", rl.x, "elements n + a for 0 <= n < x")->required();
  relations->add_option("--y", rl.y, "smoothness bound")->required();
  relations->add_flag("--include-exceptional", include_exceptional, "also use elements over primes dividing disc(f)");
  relations->add_option("--max-relations", max_relations, "stop after this many");
  relations->add_option("--json", rel_json, "write the relations as JSON");
  add_common(relations, rl);

  // dimension
  Common dm;
  std::string dim_csv;
  auto* dimension = app.add_subcommand("dimension", "bracket the dimension of the log span");
  dimension->add_option("--poly", dm.poly, "monic f, coefficients constant term first")->required();
  dimension->add_option("--x", dm.x, "elements n + a for 0 <= n < x")->required();
  dimension->add_option("--y", dm.y, "smoothness bound for the relation search, default x");
  dimension->add_option("--csv", dim_csv, "write the report row");
  add_common(dimension, dm);

  // conjecture3
  Common c3;
  std::string c3_xgrid, c3_ygrid, c3_csv;
  bool c3_linear = false;
  double c3_tol = 1e-9;
  auto* conj3 = app.add_subcommand("conjecture3", "Psi_P(x,y) against x rho(d u)");
  conj3->add_option("--poly", c3.poly, "monic f, coefficients constant term first");
  conj3->add_option("--x-grid", c3_xgrid, "comma-separated x values")->required();
  conj3->add_option("--y-grid", c3_ygrid, "defaults to y = x per row");
  conj3->add_option("--tol", c3_tol, "rho tolerance");
  conj3->add_option("--csv", c3_csv, "also write the table here");
  add_common(conj3, c3);
  conj3->add_flag("--linear", c3_linear, "degree-one bypass P(n) = n");

  // conjecture5
  Common c5;
  std::string c5_xgrid, c5_csv;
  auto* conj5 = app.add_subcommand("conjecture5", "dimension brackets against (1 - rho(d)) x");
  conj5->add_option("--poly", c5.poly, "monic f, coefficients constant term first")->required();
  conj5->add_option("--x-grid", c5_xgrid, "comma-separated x values")->required();
  conj5->add_option("--csv", c5_csv, "also write the table here");
  add_common(conj5, c5);

  try {
    std::vector<std::string> argv = merge_config(args, app);
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? kOk : kArgumentError;
    }

    if (*rho) {
      if (!(rho_tol > 0.0) || rho_tol >= 1.0) throw ArgumentError("--tol must lie in (0, 1)");
      RhoGrid grid = rho_build(std::max(rho_u, 2.0), rho_tol);
      int digits = 1 + static_cast<int>(std::ceil(-std::log10(rho_tol) - 1e-12));
      out << fixed(rho_eval(grid, rho_u), digits) << '\n';
    } else if (*sieve) {
      if (sv.x < 1) throw ArgumentError("--x must be at least 1");
      check_records(sv, sv.x);
      SieveOptions opts;
      opts.threads = sv.threads;
      std::vector<SmoothRecord> recs;
      if (sieve_linear) {
        recs = sieve_smooth_linear(sv.x, sv.y, opts);
      } else {
        if (sv.poly.empty()) throw ArgumentError("--poly is required unless --linear is given");
        NumberField K(parse_poly(sv.poly));
        if (no_cache)
          recs = sieve_smooth(K, sv.x, sv.y, opts);
        else
          recs = sieve_smooth(cache_io(cache_dir(), K.norm_poly(), sv.y, err), sv.x, opts);
      }
      out << "Psi_P(" << sv.x << ',' << sv.y << ")=" << psi_count(recs, 1) << '\n';
      if (!sieve_csv.empty()) {
        auto os = open_output(sieve_csv);
        os << "n,P(n),smooth,largest_prime,factorization\n";
        for (const auto& r : recs) {
          mpz_class v = r.value;
          if (r.sign < 0) v = -v;
          os << r.n << ',' << v.get_str() << ',' << (r.is_smooth ? 1 : 0) << ','
             << (r.largest_known ? r.largest_prime.get_str() : std::string("?")) << ','
             << factor_tokens(r) << '\n';
        }
      }
    } else if (*relations) {
      NumberField K(parse_poly(rl.poly));
      check_records(rl, rl.x);
      RelationLimits limits;
      limits.include_exceptional = include_exceptional;
      limits.max_relations = max_relations;
      limits.threads = rl.threads;
      RelationSearch rs = find_relations(K, rl.x, rl.y, limits);
      const auto& rep = rs.report;
      out << "field: " << pretty_poly(K.f()) << "  disc=" << K.disc().get_str()
          << "  unit_rank=" << K.unit_rank() << '\n'
          << "smooth=" << rep.smooth_count << " columns=" << rep.column_count
          << " margin=" << rep.margin << " rank=" << rep.matrix_rank
          << " nullity=" << rep.nullity << '\n'
          << "candidates=" << rep.candidates_tried << " torsion_scaled=" << rep.torsion_scaled
          << " unit_candidates=" << rep.unit_candidates << " refuted=" << rep.refuted
          << " skipped_cost=" << rep.skipped_cost
          << (rep.fallback_used ? " (exceptional elements added)" : "") << '\n'
          << "verified relations: " << rs.relations.size() << '\n';
      for (const auto& rel : rs.relations) out << "  " << terms_string(rel) << '\n';
      if (!rel_json.empty()) {
        auto os = open_output(rel_json);
        os << relations_json(rs.relations).dump(2) << '\n';
      }
    } else if (*dimension) {
      NumberField K(parse_poly(dm.poly));
      check_records(dm, dm.x);
      DimensionOptions opts;
      opts.threads = dm.threads;
      DimensionReport r = dim_bracket(K, dm.x, dm.y, opts);
      out << "x=" << r.x << " y=" << r.y << " elements=" << r.n_elements << '\n'
          << "rank_lower=" << r.rank_lower << " upper_from_relations=" << r.upper_from_relations
          << '\n'
          << "smooth=" << r.smooth_count << " relations=" << r.relations_found
          << " dropped=" << r.dropped << '\n'
          << "(1-rho(d))x=" << fixed(r.conj5_reference, 4)
          << " 0.51x=" << fixed(r.cassels_baseline, 4)
          << " (1-1/(2d))x=" << fixed(r.worley_baseline, 4) << '\n';
      if (!dim_csv.empty()) {
        auto os = open_output(dim_csv);
        os << "x,y,n_elements,rank_lower,upper_from_relations,smooth_count,relations_found,"
              "dropped,conj5_reference,cassels_baseline,worley_baseline\n"
           << r.x << ',' << r.y << ',' << r.n_elements << ',' << r.rank_lower << ','
           << r.upper_from_relations << ',' << r.smooth_count << ',' << r.relations_found << ','
           << r.dropped << ',' << fixed(r.conj5_reference, 10) << ','
           << fixed(r.cassels_baseline, 10) << ',' << fixed(r.worley_baseline, 10) << '\n';
      }
    } else if (*conj3) {
      auto xs = parse_grid(c3_xgrid);
      for (auto x : xs) {
        if (x < 2) throw ArgumentError("grid values must be at least 2");
        check_records(c3, x);
      }
      std::vector<std::int64_t> ys_raw = c3_ygrid.empty() ? std::vector<std::int64_t>{}
                                                          : parse_grid(c3_ygrid);
      for (auto y : ys_raw)
        if (y < 2) throw ArgumentError("grid values must be at least 2");
      IntPoly P;
      int d = 1;
      if (c3_linear) {
        P = linear_bypass_poly();
      } else {
        if (c3.poly.empty()) throw ArgumentError("--poly is required unless --linear is given");
        NumberField K(parse_poly(c3.poly));
        P = K.norm_poly();
        d = K.degree();
      }
      // u = log x / log y is largest at the largest x over the smallest y.
      double u_max = 2.0;
      for (auto x : xs)
        for (auto y : ys_raw.empty() ? xs : ys_raw)
          u_max = std::max(u_max, d * std::log(double(x)) / std::log(double(y)) + 1.0);
      RhoGrid grid = rho_build(u_max, c3_tol);
      SieveOptions opts;
      opts.threads = c3.threads;
      opts.resolve_largest_prime = false;
      std::vector<ConjectureRow> rows;
      if (ys_raw.empty()) {
        for (auto x : xs) {
          auto r = conjecture_tables(P, d, {x}, {static_cast<std::uint64_t>(x)}, grid, opts);
          rows.insert(rows.end(), r.begin(), r.end());
        }
      } else {
        std::vector<std::uint64_t> ys(ys_raw.begin(), ys_raw.end());
        rows = conjecture_tables(P, d, xs, ys, grid, opts);
      }
      std::ostringstream csv;
      csv << "x,y,psi,u,psi_over_x,rho_ratio,growth\n";
      for (const auto& r : rows)
        csv << r.x << ',' << r.y << ',' << r.psi << ',' << fixed(r.u, 10) << ','
            << fixed(double(r.psi) / double(r.x), 10) << ',' << fixed(r.rho_ratio, 10) << ','
            << fixed(r.growth, 10) << '\n';
      out << csv.str();
      if (!c3_csv.empty()) open_output(c3_csv) << csv.str();
    } else if (*conj5) {
      NumberField K(parse_poly(c5.poly));
      auto xs = parse_grid(c5_xgrid);
      for (auto x : xs) {
        if (x < 1) throw ArgumentError("grid values must be positive");
        check_records(c5, x);
      }
      DimensionOptions opts;
      opts.threads = c5.threads;
      auto rows = conjecture5_scan(K, xs, opts);
      std::ostringstream csv;
      csv << "x,lower_ratio,upper_ratio,conj5,cassels,worley\n";
      for (const auto& r : rows)
        csv << r.x << ',' << fixed(r.lower_ratio, 10) << ',' << fixed(r.upper_ratio, 10) << ','
            << fixed(r.conj5, 10) << ',' << fixed(r.cassels, 10) << ',' << fixed(r.worley, 10)
            << '\n';
      out << csv.str();
      if (!c5_csv.empty()) open_output(c5_csv) << csv.str();
    }
    return kOk;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceError;
  } catch (const PrecisionError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceError;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {  // ArgumentError, UnsupportedInput, DegenerateInput
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace shiftdep::cli
