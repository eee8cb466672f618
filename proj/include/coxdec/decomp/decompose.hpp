#pragma once

// Canonical factorization of a Coxeter group into indecomposable direct
// factors, and its cross-validation against brute-force Remak decomposition.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/reflection_group.hpp"
#include "coxdec/coxeter/system.hpp"
#include "coxdec/errors.hpp"
#include "coxdec/group/cayley.hpp"
#include "coxdec/group/isomorphism.hpp"
#include "coxdec/group/lattice.hpp"
#include "coxdec/group/remak.hpp"

namespace coxdec::decomp {

using coxeter::CoxeterClass;
using coxeter::CoxeterSystem;
using coxeter::CoxeterType;
using coxeter::Family;
using coxeter::Kind;

enum class Rule { InfiniteIrreducible, FiniteIndecomposable, ExceptionalSplit };

/// How a factor's identification is backed: the rule table alone on a group
/// small enough to check (`Rule`), a brute-force Remak match (`Oracle`), or
/// the rule table on a group beyond the oracle budget (`RuleOnly`).
enum class Provenance { Rule, Oracle, RuleOnly };

inline std::string to_string(Rule r) {
  switch (r) {
    case Rule::InfiniteIrreducible: return "InfiniteIrreducible";
    case Rule::FiniteIndecomposable: return "FiniteIndecomposable";
    case Rule::ExceptionalSplit: return "ExceptionalSplit";
  }
  return "?";
}

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Rule: return "rule";
    case Provenance::Oracle: return "oracle";
    case Provenance::RuleOnly: return "rule-only";
  }
  return "?";
}

struct CoxeterFactor {
  std::string label;
  std::optional<mpz_class> order;  ///< empty for infinite factors
  bool central = false;            ///< the order-2 centre split off an exceptional type
  Rule rule = Rule::FiniteIndecomposable;
  Provenance provenance = Provenance::Rule;
  std::size_t component = 0;  ///< index into CoxeterFactorization::components
};

struct ComponentInfo {
  std::vector<std::size_t> indices;
  CoxeterSystem system;
  CoxeterClass classification;
  std::string name;  ///< canonical diagram name
};

struct CoxeterFactorization {
  std::vector<ComponentInfo> components;
  std::vector<CoxeterFactor> factors;

  /// |W| when every component is finite.
  std::optional<mpz_class> order() const {
    mpz_class total = 1;
    for (const auto& f : factors) {
      if (!f.order) return std::nullopt;
      total *= *f.order;
    }
    return total;
  }
};

/// Finite irreducible types whose group is (centre of order 2) x
/// (indecomposable): dihedral of order 8k+4 (label m = 2 mod 4, m >= 6),
/// B_n with n >= 3 odd, H3 and E7.
inline bool is_exceptional_split(const CoxeterType& t) {
  switch (t.family) {
    case Family::I: return t.label >= 6 && t.label % 4 == 2;
    case Family::B: return t.index >= 3 && t.index % 2 == 1;
    case Family::H: return t.index == 3;
    case Family::E: return t.index == 7;
    default: return false;
  }
}

inline constexpr std::size_t kDefaultOracleBound = 2000;

/// Applies the factor rules to every component. Finite factors on groups of
/// order above `oracle_bound` are marked rule-only.
inline CoxeterFactorization decompose(const CoxeterSystem& cs, std::size_t oracle_bound = kDefaultOracleBound,
                                      unsigned budget_bits = exact::kDefaultPrecisionBudget) {
  CoxeterFactorization out;
  for (auto& c : coxeter::components(cs)) {
    ComponentInfo info{c.indices, c.system, coxeter::classify(c.system, budget_bits), coxeter::canonical_name(c.system)};
    const std::size_t idx = out.components.size();
    if (info.classification.kind != Kind::Finite) {
      out.factors.push_back({info.name, std::nullopt, false, Rule::InfiniteIrreducible, Provenance::Rule, idx});
    } else {
      const CoxeterType& t = *info.classification.type;
      const mpz_class order = coxeter::finite_order(t);
      const Provenance prov = order <= oracle_bound ? Provenance::Rule : Provenance::RuleOnly;
      if (is_exceptional_split(t)) {
        out.factors.push_back({"Z/2", mpz_class(2), true, Rule::ExceptionalSplit, prov, idx});
        out.factors.push_back({"W(" + t.name() + ")/Z", mpz_class(order / 2), false, Rule::ExceptionalSplit, prov, idx});
      } else {
        out.factors.push_back({"W(" + t.name() + ")", order, false, Rule::FiniteIndecomposable, prov, idx});
      }
    }
    out.components.push_back(std::move(info));
  }
  return out;
}

/// A normal complement to a centre of order 2, if one exists: an index-2
/// normal subgroup avoiding the central involution.
inline std::optional<std::pair<group::Subgroup, group::Subgroup>> factor_center_split(
    const group::CayleyGroup& g, std::size_t order_bound = group::kDefaultOrderBound) {
  const auto z = group::center(g);
  if (z.order() != 2) throw ValidationError("factor_center_split requires a centre of order 2");
  const group::Element involution = z.members[1];
  for (const auto& n : group::normal_subgroups(g, order_bound))
    if (2 * n.order() == g.order() && !n.contains(involution)) return std::make_pair(z, n);
  return std::nullopt;
}

struct MatchedFactor {
  std::string rule_label;
  std::string oracle_label;  ///< family identified by the Remak oracle
  std::size_t order = 0;
  bool central = false;
};

struct CrossValidationReport {
  bool passed = false;
  CoxeterFactorization factorization;
  std::vector<MatchedFactor> matches;
  std::vector<std::string> oracle_labels;  ///< every Remak leaf, sorted by order
  std::string message;
};

struct CrossValidationBudget {
  std::size_t closure = coxeter::kDefaultClosureBudget;
  std::size_t order_bound = group::kDefaultOrderBound;
};

/// Builds W, runs brute-force Remak decomposition on its Cayley table, and
/// checks that the leaf multiset equals the rule factors up to isomorphism.
/// The rule side is realized concretely: W_i for indecomposable components,
/// Z/2 and W_i / Z(W_i) for exceptional ones.
inline CrossValidationReport cross_validate(const CoxeterSystem& cs, const CrossValidationBudget& budget = {}) {
  CrossValidationReport report;
  report.factorization = decompose(cs, budget.order_bound);
  for (const auto& c : report.factorization.components)
    if (c.classification.kind != Kind::Finite)
      throw ValidationError("cross-validation needs every component finite; " + c.name + " is infinite");
  if (auto o = report.factorization.order(); o && *o > budget.order_bound)
    throw BudgetExceeded("|W| = " + o->get_str() + " exceeds the oracle bound", budget.order_bound);

  const auto whole_group = coxeter::build_group(cs, budget.closure).to_cayley(budget.order_bound);
  group::RemakOptions opt;
  opt.order_bound = budget.order_bound;
  const auto remak = group::remak_decompose(whole_group, opt);
  const auto oracle = group::factor_multiset(whole_group, remak.factors);
  for (const auto& f : oracle) report.oracle_labels.push_back(f.label);

  group::FactorMultiset rule_side;
  std::vector<std::size_t> rule_factor_index;
  for (std::size_t ci = 0; ci < report.factorization.components.size(); ++ci) {
    const auto& comp = report.factorization.components[ci];
    const auto wc = coxeter::build_group(comp.system, budget.closure).to_cayley(budget.order_bound);
    for (std::size_t fi = 0; fi < report.factorization.factors.size(); ++fi) {
      const auto& f = report.factorization.factors[fi];
      if (f.component != ci) continue;
      if (f.rule != Rule::ExceptionalSplit) {
        rule_side.push_back({f.label, wc});
      } else if (f.central) {
        rule_side.push_back({f.label, group::cyclic(2)});
      } else {
        rule_side.push_back({f.label, group::quotient(wc, group::center(wc)).group});
      }
      rule_factor_index.push_back(fi);
    }
  }

  const auto match = group::match_multisets(rule_side, oracle);
  if (!match) {
    report.passed = false;
    std::string r, o;
    for (const auto& f : rule_side) r += f.label + "(" + std::to_string(f.order()) + ") ";
    for (const auto& f : oracle) o += f.label + "(" + std::to_string(f.order()) + ") ";
    report.message = "MISMATCH: rules give {" + r + "} but Remak oracle gives {" + o + "}";
    return report;
  }
  report.passed = true;
  for (std::size_t i = 0; i < rule_side.size(); ++i) {
    auto& f = report.factorization.factors[rule_factor_index[i]];
    f.provenance = Provenance::Oracle;
    report.matches.push_back({rule_side[i].label, oracle[(*match)[i]].label, rule_side[i].order(), f.central});
  }
  report.message = "ok";
  return report;
}

}  // namespace coxdec::decomp
