// Thin pybind11 layer. Big integers cross the boundary as decimal strings and
// are turned into Python ints by the package wrapper.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftdep/arith.hpp"
#include "shiftdep/dickman.hpp"
#include "shiftdep/dimension.hpp"
#include "shiftdep/field.hpp"
#include "shiftdep/relations.hpp"
#include "shiftdep/sieve.hpp"

namespace py = pybind11;
using namespace shiftdep;

namespace {

using Terms = std::vector<std::pair<std::int64_t, long>>;

py::dict field_info(const std::string& poly) {
  NumberField K(parse_poly(poly));
  py::dict d;
  d["poly"] = format_poly(K.f());
  d["degree"] = K.degree();
  d["disc"] = K.disc().get_str();
  d["r1"] = K.r1();
  d["r2"] = K.r2();
  d["unit_rank"] = K.unit_rank();
  d["norm_poly"] = format_poly(K.norm_poly());
  std::vector<std::string> ex;
  for (const auto& p : K.exceptional_primes()) ex.push_back(p.get_str());
  d["exceptional_primes"] = ex;
  d["irreducibility_certified"] = K.irreducibility_certified();
  return d;
}

py::list records(const std::vector<SmoothRecord>& recs) {
  py::list out;
  for (const auto& r : recs) {
    py::dict d;
    d["n"] = r.n;
    d["value"] = r.value.get_str();
    d["sign"] = r.sign;
    d["smooth"] = r.is_smooth;
    d["factors"] = r.factors;
    d["cofactor"] = r.cofactor.get_str();
    d["largest_prime"] = r.largest_known ? py::object(py::str(r.largest_prime.get_str())) : py::none();
    out.append(d);
  }
  return out;
}

py::list sieve(const std::string& poly, std::int64_t x, std::uint64_t y, bool linear,
               unsigned threads) {
  SieveOptions opts;
  opts.threads = threads;
  if (linear) return records(sieve_smooth_linear(x, y, opts));
  NumberField K(parse_poly(poly));
  return records(sieve_smooth(K, x, y, opts));
}

std::int64_t psi(const std::string& poly, std::int64_t x, std::uint64_t y, bool linear) {
  if (linear) return psi_count(sieve_smooth_linear(x, y), 1);
  NumberField K(parse_poly(poly));
  return psi_count(sieve_smooth(K, x, y), 1);
}

py::dict relation_dict(const Relation& r) {
  py::dict d;
  d["terms"] = r.terms;
  d["status"] = to_string(r.status);
  d["torsion_order"] = r.torsion_order;
  return d;
}

py::dict relations(const std::string& poly, std::int64_t x, std::uint64_t y,
                   bool include_exceptional, std::size_t max_relations, unsigned threads) {
  NumberField K(parse_poly(poly));
  RelationLimits lim;
  lim.include_exceptional = include_exceptional;
  lim.max_relations = max_relations;
  lim.threads = threads;
  RelationSearch rs;
  {
    py::gil_scoped_release nogil;
    rs = find_relations(K, x, y, lim);
  }
  py::list rels;
  for (const auto& r : rs.relations) rels.append(relation_dict(r));
  const auto& rep = rs.report;
  py::dict report;
  report["smooth_count"] = rep.smooth_count;
  report["column_count"] = rep.column_count;
  report["unit_rank"] = rep.unit_rank;
  report["margin"] = rep.margin;
  report["matrix_rank"] = rep.matrix_rank;
  report["nullity"] = rep.nullity;
  report["fallback_used"] = rep.fallback_used;
  py::dict d;
  d["relations"] = rels;
  d["report"] = report;
  return d;
}

bool verify(const std::string& poly, const Terms& terms) {
  NumberField K(parse_poly(poly));
  return verify_relation(K, terms);
}

py::dict dimension(const std::string& poly, std::int64_t x, std::uint64_t y, unsigned threads) {
  NumberField K(parse_poly(poly));
  DimensionOptions opts;
  opts.threads = threads;
  opts.relation_limits.threads = threads;
  DimensionReport r;
  {
    py::gil_scoped_release nogil;
    r = dim_bracket(K, x, y, opts);
  }
  py::dict d;
  d["x"] = r.x;
  d["y"] = r.y;
  d["n_elements"] = r.n_elements;
  d["rank_lower"] = r.rank_lower;
  d["upper_from_relations"] = r.upper_from_relations;
  d["smooth_count"] = r.smooth_count;
  d["relations_found"] = r.relations_found;
  d["dropped"] = r.dropped;
  d["conj5_reference"] = r.conj5_reference;
  d["cassels_baseline"] = r.cassels_baseline;
  d["worley_baseline"] = r.worley_baseline;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "shiftdep native core";
  m.def(
      "rho",
      [](double u, double tol) {
        RhoGrid g = rho_build(std::max(u, 2.0), tol);
        return rho_eval(g, u);
      },
      py::arg("u"), py::arg("tol") = 1e-9);
  m.def("field_info", &field_info, py::arg("poly"));
  m.def("sieve", &sieve, py::arg("poly"), py::arg("x"), py::arg("y"), py::arg("linear") = false,
        py::arg("threads") = 1);
  m.def("psi", &psi, py::arg("poly"), py::arg("x"), py::arg("y"), py::arg("linear") = false);
  m.def("find_relations", &relations, py::arg("poly"), py::arg("x"), py::arg("y"),
        py::arg("include_exceptional") = false, py::arg("max_relations") = 64,
        py::arg("threads") = 1);
  m.def("verify_relation", &verify, py::arg("poly"), py::arg("terms"));
  m.def("dim_bracket", &dimension, py::arg("poly"), py::arg("x"), py::arg("y") = 0,
        py::arg("threads") = 1);
}
