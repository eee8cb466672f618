#pragma once

// K_n / k_n invariants (intersection of the normal subgroups of index at most
// n, and its index), their value on free groups for tiny parameters, and the
// QM bound of a finite group.

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/group/cayley.hpp"
#include "coxdec/group/isomorphism.hpp"
#include "coxdec/group/lattice.hpp"

namespace coxdec::group {

struct KnResult {
  Subgroup kernel;      ///< K_n(G)
  std::size_t index = 1;  ///< k_n(G) = [G : K_n(G)]
};

inline KnResult kn(const CayleyGroup& g, std::size_t n, std::size_t order_bound = kDefaultOrderBound) {
  if (n < 1) throw ValidationError("k_n needs n >= 1");
  KnResult r;
  r.kernel = whole(g);
  if (n == 1) return r;
  for (const auto& s : normal_subgroups(g, order_bound))
    if (g.order() / s.order() <= n) r.kernel = intersection(r.kernel, s);
  r.index = g.order() / r.kernel.order();
  return r;
}

/// One representative of every isomorphism class of groups of order 1..8,
/// built from explicit constructions and checked against the known counts
/// 1, 1, 1, 2, 1, 2, 1, 5.
inline const std::vector<CayleyGroup>& small_group_catalog() {
  static const std::vector<CayleyGroup> catalog = [] {
    std::vector<CayleyGroup> c{CayleyGroup(),          cyclic(2),        cyclic(3),
                               cyclic(4),              abelian({2, 2}),  cyclic(5),
                               cyclic(6),              symmetric(3),     cyclic(7),
                               cyclic(8),              abelian({4, 2}),  abelian({2, 2, 2}),
                               dihedral(4),            quaternion()};
    const std::size_t expected[] = {0, 1, 1, 1, 2, 1, 2, 1, 5};
    std::size_t counts[9] = {};
    for (std::size_t i = 0; i < c.size(); ++i) {
      ++counts[c[i].order()];
      for (std::size_t j = 0; j < i; ++j)
        if (c[i].order() == c[j].order() && is_isomorphic(c[i], c[j]))
          throw InternalError("small group catalog holds two isomorphic groups");
    }
    for (std::size_t k = 1; k <= 8; ++k)
      if (counts[k] != expected[k]) throw InternalError("small group catalog has the wrong count at order " + std::to_string(k));
    return c;
  }();
  return catalog;
}

struct FreeGroupSpec {
  std::size_t generators = 1;  ///< g
  std::size_t index_bound = 2;  ///< n
};

inline constexpr std::size_t kDefaultFreeBudget = 5000000;

/// k_n(F_g): each normal subgroup of index <= n in the free group on g letters
/// is the kernel of a surjection onto a group Q of order <= n, and two
/// surjections share a kernel iff they differ by an automorphism of Q. The
/// quotient F_g / K_n is the subgroup of the product of one Q per kernel
/// generated by the g tuples of generator images.
inline std::size_t kn_free(const FreeGroupSpec& spec, std::size_t budget = kDefaultFreeBudget) {
  const std::size_t g = spec.generators, n = spec.index_bound;
  if (g < 1 || n < 2) throw ValidationError("kn_free needs g >= 1 and n >= 2");
  if (n > 8 || g > 3) throw ValidationError("kn_free is limited to n <= 8 and g <= 3");

  struct Kernel {
    const CayleyGroup* q;
    std::vector<Element> images;  // one per free generator
  };
  std::vector<Kernel> kernels;
  for (const auto& q : small_group_catalog()) {
    if (q.order() < 2 || q.order() > n) continue;
    const auto autos = automorphisms(q);
    std::set<std::vector<Element>> seen;
    std::vector<Element> tuple(g, 0);
    // Enumerate all g-tuples; keep one per Aut(Q)-orbit of generating tuples.
    while (true) {
      if (!seen.count(tuple) && generate(q, tuple).order() == q.order()) {
        for (const auto& a : autos) {
          std::vector<Element> t(g);
          for (std::size_t i = 0; i < g; ++i) t[i] = a[tuple[i]];
          seen.insert(std::move(t));
        }
        kernels.push_back({&q, tuple});
      }
      std::size_t i = 0;
      while (i < g && ++tuple[i] == q.order()) tuple[i++] = 0;
      if (i == g) break;
    }
  }

  // Closure of the g generator tuples inside the product of all quotients.
  using Tuple = std::vector<std::uint8_t>;
  struct TupleHash {
    std::size_t operator()(const Tuple& t) const {
      std::size_t h = 0;
      for (auto v : t) h = h * 131 + v;
      return h;
    }
  };
  std::vector<Tuple> gens(g, Tuple(kernels.size()));
  for (std::size_t k = 0; k < kernels.size(); ++k)
    for (std::size_t i = 0; i < g; ++i) gens[i][k] = static_cast<std::uint8_t>(kernels[k].images[i]);
  std::unordered_set<Tuple, TupleHash> seen{Tuple(kernels.size(), 0)};
  std::vector<Tuple> frontier{Tuple(kernels.size(), 0)};
  for (std::size_t idx = 0; idx < frontier.size(); ++idx) {
    for (const auto& s : gens) {
      Tuple y(kernels.size());
      for (std::size_t k = 0; k < kernels.size(); ++k)
        y[k] = static_cast<std::uint8_t>(kernels[k].q->mul(frontier[idx][k], s[k]));
      if (seen.insert(y).second) {
        if (seen.size() > budget)
          throw BudgetExceeded("k_n(F_g) closure exceeded budget; kernels found: " + std::to_string(kernels.size()),
                               kernels.size());
        frontier.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

/// For finite G: the largest, over nontrivial subgroups D, of the least index
/// of a proper normal subgroup of D.
inline std::size_t qm_bound(const CayleyGroup& g, std::size_t subgroup_bound = kDefaultSubgroupOrderBound) {
  if (g.order() == 1) throw ValidationError("qm_bound is undefined for the trivial group");
  std::size_t best = 0;
  for (const auto& d : all_subgroups(g, subgroup_bound)) {
    if (d.order() == 1) continue;
    const auto sub = subgroup_group(g, d).group;
    std::size_t least = d.order();
    for (const auto& nsub : normal_subgroups(sub, subgroup_bound))
      if (nsub.order() < d.order()) least = std::min(least, d.order() / nsub.order());
    best = std::max(best, least);
  }
  return best;
}

}  // namespace coxdec::group
