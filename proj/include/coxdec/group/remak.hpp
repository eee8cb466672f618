#pragma once

// Remak decomposition of finite groups: internal direct products of
// indecomposable normal subgroups, found by searching for normal subgroups
// that admit a normal complement.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coxdec/group/cayley.hpp"
#include "coxdec/group/isomorphism.hpp"
#include "coxdec/group/lattice.hpp"

namespace coxdec::group {

namespace detail {

// Like extend_map but without injectivity: checks that the generator images
// extend to a homomorphism on the subgroup the generators span.
inline bool extend_hom(const CayleyGroup& g, std::span<const Element> gens, std::span<const Element> images,
                       std::vector<Element>& map) {
  const auto unset = static_cast<Element>(g.order());
  std::fill(map.begin(), map.end(), unset);
  map[0] = 0;
  std::vector<Element> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Element x = frontier[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = g.mul(x, gens[k]);
      const Element img = g.mul(map[x], images[k]);
      if (map[y] == unset) {
        map[y] = img;
        frontier.push_back(y);
      } else if (map[y] != img) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// A normal complement M of the normal subgroup N (so G = N x M internally),
/// if one exists.
///
/// N is a direct factor iff there is a retraction G -> N, i.e. a homomorphism
/// restricting to the identity on N; its kernel is the complement. For a
/// generator g outside N the image x must satisfy x^-1 g in C_G(N), which
/// leaves |Z(N)| choices per generator.
inline std::optional<Subgroup> direct_complement(const CayleyGroup& g, const Subgroup& n) {
  if (n.order() == 1) return whole(g);
  if (n.order() == g.order()) return trivial_subgroup();
  if (g.order() % n.order() != 0) return std::nullopt;
  const Subgroup c = centralizer(g, n);
  const Subgroup zn = intersection(c, n);
  // C_G(N) = Z(N) x M for a complement M.
  if (c.order() != zn.order() * (g.order() / n.order())) return std::nullopt;
  const Mask cm = to_mask(g.order(), c);

  std::vector<Element> gens = generators_of(g, n);
  const std::size_t fixed = gens.size();
  {
    Mask mask = to_mask(g.order(), n);
    std::vector<Element> members = n.members;
    for (Element x = 0; x < g.order(); ++x) {
      if (mask[x]) continue;
      gens.push_back(x);
      detail::extend_span(g, mask, members, gens);
    }
  }
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t k = fixed; k < gens.size(); ++k) {
    for (Element y : n.members)
      if (cm[g.mul(g.inverse(y), gens[k])]) candidates[k].push_back(y);
    if (candidates[k].empty()) return std::nullopt;
  }
  std::vector<Element> images(gens.begin(), gens.end());
  std::vector<Element> map(g.order());
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) return true;
    for (Element y : candidates[k]) {
      images[k] = y;
      if (detail::extend_hom(g, std::span(gens).first(k + 1), std::span(images).first(k + 1), map) && search(k + 1))
        return true;
    }
    return false;
  };
  if (!search(fixed)) return std::nullopt;
  detail::extend_hom(g, gens, images, map);
  Subgroup kernel;
  for (Element x = 0; x < g.order(); ++x)
    if (map[x] == 0) kernel.members.push_back(x);
  if (kernel.order() * n.order() != g.order()) throw InternalError("retraction kernel has the wrong order");
  return kernel;
}

struct RemakOptions {
  /// When set, candidate normal subgroups are tried in a random order drawn
  /// from this seed instead of by increasing order.
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t order_bound = kDefaultOrderBound;
};

namespace detail {

template <class Rng>
std::optional<std::pair<Subgroup, Subgroup>> try_candidates(const CayleyGroup& g, std::vector<Subgroup> cands,
                                                            Rng* rng) {
  std::erase_if(cands, [&](const Subgroup& s) { return s.order() == 1 || s.order() == g.order(); });
  if (rng)
    std::shuffle(cands.begin(), cands.end(), *rng);
  else
    std::sort(cands.begin(), cands.end());
  for (const auto& n : cands)
    if (auto m = direct_complement(g, n)) return std::make_pair(n, std::move(*m));
  return std::nullopt;
}

}  // namespace detail

/// A nontrivial proper direct factor and its complement, or nothing when g is
/// indecomposable (or trivial). Normal closures of single conjugacy classes
/// are tried before the full normal-subgroup lattice.
inline std::optional<std::pair<Subgroup, Subgroup>> find_direct_factor(const CayleyGroup& g,
                                                                       const RemakOptions& opt = {}) {
  if (g.order() > opt.order_bound)
    throw BudgetExceeded("group order " + std::to_string(g.order()) + " exceeds bound", g.order());
  if (g.order() == 1) return std::nullopt;
  std::optional<std::mt19937_64> rng;
  if (opt.shuffle_seed) rng.emplace(*opt.shuffle_seed ^ g.order());
  std::vector<Subgroup> cheap;
  {
    std::set<Subgroup> seen;
    for (const auto& cls : conjugacy_classes(g))
      if (cls.front() != 0) seen.insert(normal_closure(g, cls));
    cheap.assign(seen.begin(), seen.end());
  }
  if (auto r = detail::try_candidates(g, cheap, rng ? &*rng : nullptr)) return r;
  return detail::try_candidates(g, normal_subgroups(g, opt.order_bound), rng ? &*rng : nullptr);
}

inline bool is_indecomposable(const CayleyGroup& g, const RemakOptions& opt = {}) {
  return g.order() > 1 && !find_direct_factor(g, opt);
}

struct RemakNode {
  Subgroup subgroup;  ///< in the indices of the decomposed group
  std::vector<RemakNode> children;
};

struct RemakDecomposition {
  RemakNode root;
  std::vector<Subgroup> factors;  ///< leaves: indecomposable, pairwise commuting, product = G
};

/// Recursively splits off direct factors until every piece is
/// indecomposable. The trivial group yields no factors.
inline RemakDecomposition remak_decompose(const CayleyGroup& g, const RemakOptions& opt = {}) {
  RemakDecomposition out;
  std::function<RemakNode(const CayleyGroup&, const std::vector<Element>&)> rec =
      [&](const CayleyGroup& local, const std::vector<Element>& embed) -> RemakNode {
    RemakNode node;
    node.subgroup.members = embed;
    std::sort(node.subgroup.members.begin(), node.subgroup.members.end());
    if (local.order() == 1) return node;
    auto split = find_direct_factor(local, opt);
    if (!split) {
      out.factors.push_back(node.subgroup);
      return node;
    }
    for (const Subgroup* part : {&split->first, &split->second}) {
      auto sub = subgroup_group(local, *part);
      std::vector<Element> e(sub.embedding.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = embed[sub.embedding[i]];
      node.children.push_back(rec(sub.group, e));
    }
    return node;
  };
  std::vector<Element> id(g.order());
  std::iota(id.begin(), id.end(), Element{0});
  out.root = rec(g, id);
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

/// Checks that `factors` form an internal direct decomposition of g: normal,
/// pairwise commuting, trivially intersecting, with product g.
inline bool is_internal_direct_product(const CayleyGroup& g, const std::vector<Subgroup>& factors) {
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (!is_subgroup(g, f) || !is_normal(g, f)) return false;
    total *= f.order();
  }
  if (total != g.order()) return false;
  Subgroup acc = trivial_subgroup();
  for (const auto& f : factors) {
    if (intersection(acc, f).order() != 1) return false;
    acc = product(g, acc, f);
  }
  return acc.order() == g.order();
}

/// Every decomposition of g into indecomposable normal subgroups, each as a
/// sorted list of subgroups. Exhaustive over the normal-subgroup lattice.
inline std::vector<std::vector<Subgroup>> all_remak_decompositions(const CayleyGroup& g,
                                                                   std::size_t order_bound = kDefaultOrderBound) {
  const auto normals = normal_subgroups(g, order_bound);
  std::vector<std::size_t> indecomposable;
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (is_indecomposable(subgroup_group(g, normals[i]).group)) indecomposable.push_back(i);
  std::vector<std::vector<Subgroup>> out;
  std::vector<Subgroup> chosen;
  std::function<void(std::size_t, const Subgroup&)> rec = [&](std::size_t start, const Subgroup& acc) {
    if (acc.order() == g.order()) {
      auto d = chosen;
      std::sort(d.begin(), d.end());
      out.push_back(std::move(d));
      return;
    }
    for (std::size_t k = start; k < indecomposable.size(); ++k) {
      const Subgroup& n = normals[indecomposable[k]];
      if ((g.order() / acc.order()) % n.order() != 0) continue;
      if (intersection(acc, n).order() != 1) continue;
      chosen.push_back(n);
      rec(k + 1, product(g, acc, n));
      chosen.pop_back();
    }
  };
  if (g.order() == 1) return {{}};
  rec(0, trivial_subgroup());
  std::sort(out.begin(), out.end());
  return out;
}

/// Name of a recognized small family (Z/n, Sym(k), Alt(k), Dih(2k), Q8), each
/// confirmed by an explicit isomorphism, or the group's fingerprint.
inline std::string identify_family(const CayleyGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return "1";
  for (Element x = 0; x < n; ++x)
    if (g.element_order(x) == n) return "Z/" + std::to_string(n);
  const std::size_t fact[] = {1, 1, 2, 6, 24, 120, 720};
  for (std::size_t k = 3; k <= 6; ++k)
    if (n == fact[k] && is_isomorphic(g, symmetric(k))) return "Sym(" + std::to_string(k) + ")";
  for (std::size_t k = 4; k <= 6; ++k)
    if (n == fact[k] / 2 && is_isomorphic(g, alternating(k))) return "Alt(" + std::to_string(k) + ")";
  if (n % 2 == 0 && n >= 6 && is_isomorphic(g, dihedral(n / 2))) return "Dih(" + std::to_string(n) + ")";
  if (n == 8 && is_isomorphic(g, quaternion())) return "Q8";
  return "[" + fingerprint(g).to_string() + "]";
}

struct Factor {
  std::string label;
  CayleyGroup group;
  std::size_t order() const noexcept { return group.order(); }
};

using FactorMultiset = std::vector<Factor>;

/// Leaves of a decomposition as standalone groups with family labels.
inline FactorMultiset factor_multiset(const CayleyGroup& g, const std::vector<Subgroup>& factors) {
  FactorMultiset out;
  for (const auto& f : factors) {
    auto sub = subgroup_group(g, f).group;
    out.push_back({identify_family(sub), std::move(sub)});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.label < b.label;
  });
  return out;
}

/// Matching of two multisets up to isomorphism: result[i] is the index in b
/// matched to a[i]. Greedy matching is exact because isomorphism is an
/// equivalence relation.
inline std::optional<std::vector<std::size_t>> match_multisets(const FactorMultiset& a, const FactorMultiset& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<std::size_t> match(a.size());
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (used[j] || a[i].order() != b[j].order()) continue;
      if (is_isomorphic(a[i].group, b[j].group)) {
        used[j] = true;
        match[i] = j;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return match;
}

inline bool equivalent(const FactorMultiset& a, const FactorMultiset& b) { return match_multisets(a, b).has_value(); }

}  // namespace coxdec::group
