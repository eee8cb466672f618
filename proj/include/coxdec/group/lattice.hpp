#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/group/cayley.hpp"

namespace coxdec::group {

inline constexpr std::size_t kDefaultSubgroupOrderBound = 400;
inline constexpr std::size_t kDefaultLatticeLimit = 200000;

/// Conjugacy classes, each sorted, listed by smallest member.
inline std::vector<std::vector<Element>> conjugacy_classes(const CayleyGroup& g) {
  const auto gens = g.generators();
  std::vector<Element> class_of(g.order(), static_cast<Element>(g.order()));
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (class_of[x] != g.order()) continue;
    const auto id = static_cast<Element>(classes.size());
    std::vector<Element> cls{x};
    class_of[x] = id;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Element s : gens) {
        const Element y = g.conjugate(cls[i], s);
        if (class_of[y] != id) {
          class_of[y] = id;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Smallest normal subgroup containing `elements`.
inline Subgroup normal_closure(const CayleyGroup& g, std::span<const Element> elements) {
  const auto gens = g.generators();
  Mask seen(g.order(), 0);
  std::vector<Element> conj;
  for (Element x : elements)
    if (!seen[x]) {
      seen[x] = 1;
      conj.push_back(x);
    }
  for (std::size_t i = 0; i < conj.size(); ++i)
    for (Element s : gens) {
      const Element y = g.conjugate(conj[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        conj.push_back(y);
      }
    }
  return generate(g, conj);
}

inline Subgroup centralizer(const CayleyGroup& g, const Subgroup& s) {
  const auto gens = generators_of(g, s);
  Subgroup out;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : gens)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.members.push_back(x);
  }
  return out;
}

inline Subgroup center(const CayleyGroup& g) { return centralizer(g, whole(g)); }

/// Derived subgroup: normal closure of the commutators of a generating set.
inline Subgroup derived_subgroup(const CayleyGroup& g) {
  const auto gens = g.generators();
  std::vector<Element> comms;
  for (Element a : gens)
    for (Element b : gens) comms.push_back(g.commutator(a, b));
  return normal_closure(g, comms);
}

namespace detail {

// Breadth-first join closure: starting from the trivial subgroup, join with
// each seed until no new subgroup appears. `join_with(h, seed)` must return
// the subgroup generated by h and the seed.
template <class Seeds, class Join>
std::vector<Subgroup> join_closure(const Seeds& seeds, Join join_with, std::size_t limit) {
  std::set<Subgroup> found{trivial_subgroup()};
  std::vector<Subgroup> queue{trivial_subgroup()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Mask m = [&] {
      Mask mm(queue[i].members.back() + 1, 0);
      for (auto x : queue[i].members) mm[x] = 1;
      return mm;
    }();
    for (const auto& seed : seeds) {
      if (seed.first < m.size() && m[seed.first]) continue;  // seed already inside
      Subgroup j = join_with(queue[i], seed);
      if (found.insert(j).second) {
        if (found.size() > limit) throw BudgetExceeded("subgroup lattice exceeds limit", found.size());
        queue.push_back(std::move(j));
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace detail

/// All normal subgroups, sorted by (order, members). Each is a join of normal
/// closures of single conjugacy classes.
inline std::vector<Subgroup> normal_subgroups(const CayleyGroup& g, std::size_t order_bound = kDefaultOrderBound,
                                              std::size_t limit = kDefaultLatticeLimit) {
  if (g.order() > order_bound)
    throw BudgetExceeded("group order " + std::to_string(g.order()) + " exceeds bound " + std::to_string(order_bound),
                         g.order());
  // Seeds: (class representative, class members); distinct closures only.
  std::vector<std::pair<Element, std::vector<Element>>> seeds;
  std::set<Subgroup> closures;
  for (auto& cls : conjugacy_classes(g)) {
    if (cls.front() == 0) continue;
    if (closures.insert(normal_closure(g, cls)).second) seeds.emplace_back(cls.front(), std::move(cls));
  }
  auto join = [&](const Subgroup& h, const std::pair<Element, std::vector<Element>>& seed) {
    return coxdec::group::join(g, h, seed.second);
  };
  return detail::join_closure(seeds, join, limit);
}

/// All subgroups, sorted by (order, members); joins of cyclic subgroups.
inline std::vector<Subgroup> all_subgroups(const CayleyGroup& g, std::size_t order_bound = kDefaultSubgroupOrderBound,
                                           std::size_t limit = kDefaultLatticeLimit) {
  if (g.order() > order_bound)
    throw BudgetExceeded("group order " + std::to_string(g.order()) + " exceeds subgroup bound " +
                             std::to_string(order_bound),
                         g.order());
  std::vector<std::pair<Element, std::vector<Element>>> seeds;
  std::set<Subgroup> cyclics;
  for (Element x = 1; x < g.order(); ++x)
    if (cyclics.insert(generate(g, {x})).second) seeds.emplace_back(x, std::vector<Element>{x});
  auto join = [&](const Subgroup& h, const std::pair<Element, std::vector<Element>>& seed) {
    return coxdec::group::join(g, h, seed.second);
  };
  return detail::join_closure(seeds, join, limit);
}

/// Upper central series ζ^0 = 1, ζ^{k+1} = preimage of Z(G/ζ^k), run until
/// stationary. Returns every term, the last being the hypercenter.
inline std::vector<Subgroup> upper_central_series(const CayleyGroup& g) {
  std::vector<Subgroup> series{trivial_subgroup()};
  while (true) {
    const auto q = quotient(g, series.back());
    Subgroup next = preimage(q, center(q.group));
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline Subgroup hypercenter(const CayleyGroup& g) { return upper_central_series(g).back(); }

}  // namespace coxdec::group
