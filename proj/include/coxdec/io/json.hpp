#pragma once

// JSON encodings of inputs and results. Keys keep insertion order so output
// is byte-stable; rationals are "num/den" strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/system.hpp"
#include "coxdec/decomp/decompose.hpp"
#include "coxdec/errors.hpp"
#include "coxdec/exact/cyclotomic.hpp"
#include "coxdec/exact/symmatrix.hpp"
#include "coxdec/group/cayley.hpp"
#include "coxdec/group/remak.hpp"
#include "coxdec/lie/algebra.hpp"
#include "coxdec/lie/decompose.hpp"

namespace coxdec::io {

using Json = nlohmann::ordered_json;

inline std::string rational_string(mpq_class q) {
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ValidationError("invalid rational '" + s + "'");
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
inline Json integer_json(const mpz_class& z) {
  if (z.fits_ulong_p()) return z.get_ui();
  return z.get_str();
}

inline Json to_json(const Label& l) {
  if (l.is_infinite()) return "inf";
  return l.value();
}

inline Json to_json(const coxeter::CoxeterSystem& cs) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < cs.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cs.rank(); ++j) row.push_back(to_json(cs.label(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rank", cs.rank()}, {"matrix", std::move(rows)}};
}

inline coxeter::CoxeterSystem coxeter_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
    throw ValidationError("Coxeter JSON needs a \"matrix\" array");
  std::vector<std::vector<Label>> m;
  for (const auto& row : j["matrix"]) {
    if (!row.is_array()) throw ValidationError("Coxeter JSON matrix rows must be arrays");
    std::vector<Label> r;
    for (const auto& e : row) {
      Label l;
      if (e.is_string()) {
        if (!Label::try_parse(e.get<std::string>(), l)) throw ValidationError("invalid label " + e.dump());
      } else if (e.is_number_unsigned() && e.get<std::uint64_t>() > 0 && e.get<std::uint64_t>() < 1000000000) {
        l = Label(static_cast<std::uint32_t>(e.get<std::uint64_t>()));
      } else {
        throw ValidationError("invalid label " + e.dump());
      }
      r.push_back(l);
    }
    m.push_back(std::move(r));
  }
  if (j.contains("rank") && j["rank"] != m.size()) throw ValidationError("Coxeter JSON rank does not match the matrix");
  return coxeter::CoxeterSystem(std::move(m));
}

inline Json to_json(const exact::Signature& s) { return Json::array({s.p, s.q, s.r}); }

inline Json to_json(const exact::CycloNumber& x) {
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(rational_string(c));
  const auto p = exact::preview(x);
  return Json{{"conductor", x.conductor()},
              {"coeffs", std::move(coeffs)},
              {"preview", p.decimal},
              {"error_bound", p.error_bound}};
}

inline Json to_json(const exact::SymMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const coxeter::CoxeterClass& c) {
  return Json{{"kind", coxeter::to_string(c.kind)},
              {"signature", to_json(c.signature)},
              {"type", c.type ? Json(c.type->name()) : Json(nullptr)}};
}

inline Json to_json(const coxeter::SignatureFacts& f) {
  return Json{{"finite_iff_positive_definite", f.finite_iff_positive_definite},
              {"affine_iff_corank_one", f.affine_iff_corank_one},
              {"q_zero_implies_r_at_most_one", f.semidefinite_kernel_at_most_one},
              {"rank_at_most_4_implies_p_at_least_n_minus_1", f.small_rank_almost_positive},
              {"rank_at_least_4_implies_p_at_least_3", f.large_rank_p_at_least_three},
              {"all", f.all()}};
}

inline Json indices_json(const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(i);
  return a;
}

inline Json to_json(const decomp::CoxeterFactorization& f) {
  Json comps = Json::array();
  for (const auto& c : f.components) {
    Json j = to_json(c.classification);
    comps.push_back(Json{{"indices", indices_json(c.indices)},
                         {"name", c.name},
                         {"kind", j["kind"]},
                         {"signature", j["signature"]},
                         {"type", j["type"]}});
  }
  Json factors = Json::array();
  for (const auto& x : f.factors)
    factors.push_back(Json{{"label", x.label},
                           {"order", x.order ? integer_json(*x.order) : Json("infinite")},
                           {"central", x.central},
                           {"provenance", decomp::to_string(x.provenance)},
                           {"rule", decomp::to_string(x.rule)},
                           {"component", x.component}});
  const auto order = f.order();
  return Json{{"components", std::move(comps)},
              {"factors", std::move(factors)},
              {"order", order ? integer_json(*order) : Json("infinite")}};
}

inline Json to_json(const decomp::CrossValidationReport& r) {
  Json matches = Json::array();
  for (const auto& m : r.matches)
    matches.push_back(Json{
        {"rule_label", m.rule_label}, {"oracle_label", m.oracle_label}, {"order", m.order}, {"central", m.central}});
  Json oracle = Json::array();
  for (const auto& l : r.oracle_labels) oracle.push_back(l);
  Json j = to_json(r.factorization);
  return Json{{"passed", r.passed},
              {"message", r.message},
              {"components", j["components"]},
              {"factors", j["factors"]},
              {"order", j["order"]},
              {"matches", std::move(matches)},
              {"oracle_factors", std::move(oracle)}};
}

inline Json to_json(const group::Subgroup& s) {
  Json members = Json::array();
  for (auto m : s.members) members.push_back(m);
  return Json{{"order", s.order()}, {"members", std::move(members)}};
}

inline Json to_json(const group::CayleyGroup& g, const group::RemakDecomposition& d) {
  const auto labelled = group::factor_multiset(g, d.factors);
  Json factors = Json::array();
  for (const auto& f : d.factors) {
    const auto sub = group::subgroup_group(g, f).group;
    Json j = to_json(f);
    factors.push_back(Json{{"label", group::identify_family(sub)}, {"order", f.order()}, {"members", j["members"]}});
  }
  Json multiset = Json::array();
  for (const auto& f : labelled) multiset.push_back(f.label);
  return Json{{"order", g.order()}, {"factors", std::move(factors)}, {"multiset", std::move(multiset)}};
}

inline Json to_json(const lie::LieAlgebra& l) {
  Json brackets = Json::array();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j)
      for (const auto& [k, v] : l.basis_bracket(i, j)) brackets.push_back(Json::array({i, j, k, rational_string(v)}));
  return Json{{"dim", l.dim()}, {"brackets", std::move(brackets)}};
}

/// Reads {dim, brackets: [[i, j, k, "num/den"], ...]}; entries with i > j are
/// accepted as the antisymmetric partner.
inline lie::LieAlgebra lie_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned())
    throw ValidationError("Lie algebra JSON needs a nonnegative \"dim\"");
  const std::size_t d = j["dim"].get<std::size_t>();
  if (d > 200) throw ValidationError("Lie algebra dimension too large");
  std::vector<mpq_class> c(d * d * d);
  std::vector<char> set(d * d * d, 0);
  if (j.contains("brackets")) {
    for (const auto& e : j["brackets"]) {
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() ||
          !e[2].is_number_unsigned())
        throw ValidationError("bracket entries must be [i, j, k, \"num/den\"]");
      const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>(), k = e[2].get<std::size_t>();
      if (a >= d || b >= d || k >= d) throw ValidationError("bracket index out of range in " + e.dump());
      const mpq_class v = e[3].is_string() ? parse_rational(e[3].get<std::string>())
                                           : e[3].is_number_integer() ? mpq_class(e[3].get<long>())
                                                                      : throw ValidationError("bad coefficient");
      const std::size_t ab = (a * d + b) * d + k, ba = (b * d + a) * d + k;
      if ((set[ab] && c[ab] != v) || (set[ba] && c[ba] != -v) || (a == b && v != 0))
        throw ValidationError("conflicting or non-antisymmetric bracket entry " + e.dump());
      c[ab] = v;
      c[ba] = -v;
      set[ab] = set[ba] = 1;
    }
  }
  return lie::LieAlgebra(d, std::move(c));
}

inline Json to_json(const lie::IdealDecomposition& d) {
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    Json basis = Json::array();
    for (const auto& v : s.ideal.basis()) {
      Json row = Json::array();
      for (const auto& x : v) row.push_back(rational_string(x));
      basis.push_back(std::move(row));
    }
    summands.push_back(Json{{"dim", s.ideal.dim()},
                            {"centroid_dim", s.centroid_dim},
                            {"certificate", lie::to_string(s.certificate)},
                            {"basis", std::move(basis)}});
  }
  Json dims = Json::array();
  for (auto x : d.dimensions()) dims.push_back(x);
  return Json{{"verdict", lie::to_string(d.verdict)},
              {"centroid_dim", d.centroid_dim},
              {"summand_dims", std::move(dims)},
              {"summands", std::move(summands)}};
}

inline Json error_json(const std::string& kind, const std::string& message, int exit_code) {
  return Json{{"error", kind}, {"message", message}, {"exit_code", exit_code}};
}

}  // namespace coxdec::io
