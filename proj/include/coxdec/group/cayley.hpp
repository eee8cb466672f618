#pragma once

// Finite groups given by multiplication tables, subgroups as sorted member
// lists, and the basic constructions (products, quotients, permutation
// groups) every other group-theoretic routine builds on.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coxdec/errors.hpp"

namespace coxdec::group {

using Element = std::uint32_t;

inline constexpr std::size_t kDefaultOrderBound = 2000;

/// Marks constructor calls whose table is correct by construction.
struct TrustedTable {};

class CayleyGroup {
public:
  /// The trivial group.
  CayleyGroup() : n_(1), table_{0}, inverse_{0} {}

  /// Validates the table: identity at index 0, Latin square, associativity
  /// (Light's test over a generating set).
  CayleyGroup(std::size_t n, std::vector<Element> table) : n_(n), table_(std::move(table)) {
    validate();
    fill_inverses();
  }

  CayleyGroup(TrustedTable, std::size_t n, std::vector<Element> table) : n_(n), table_(std::move(table)) {
    fill_inverses();
  }

  std::size_t order() const noexcept { return n_; }
  Element mul(Element a, Element b) const noexcept { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inverse(Element a) const noexcept { return inverse_[a]; }
  Element conjugate(Element x, Element g) const noexcept { return mul(mul(inverse(g), x), g); }
  Element commutator(Element a, Element b) const noexcept { return mul(mul(inverse(a), inverse(b)), mul(a, b)); }
  std::span<const Element> table() const noexcept { return table_; }

  std::size_t element_order(Element a) const noexcept {
    std::size_t k = 1;
    for (Element x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Element a = 0; a < n_; ++a)
      for (Element b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Greedy generating set: scan elements in index order, keep those not in
  /// the subgroup generated so far.
  std::vector<Element> generators() const;

  friend bool operator==(const CayleyGroup& a, const CayleyGroup& b) { return a.table_ == b.table_; }

private:
  void validate() const {
    if (n_ == 0) throw ValidationError("group order must be positive");
    if (table_.size() != n_ * n_) throw ValidationError("table must have n*n entries");
    for (auto v : table_)
      if (v >= n_) throw ValidationError("table entry " + std::to_string(v) + " out of range");
    for (Element a = 0; a < n_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        throw ValidationError("identity fails: index 0 is not a two-sided identity at " + std::to_string(a));
    std::vector<char> seen(n_);
    for (Element a = 0; a < n_; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (Element b = 0; b < n_; ++b) {
        if (seen[mul(a, b)]) throw ValidationError("inverses fail: row " + std::to_string(a) + " is not a permutation");
        seen[mul(a, b)] = 1;
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (Element b = 0; b < n_; ++b) {
        if (seen[mul(b, a)])
          throw ValidationError("inverses fail: column " + std::to_string(a) + " is not a permutation");
        seen[mul(b, a)] = 1;
      }
    }
    // Light's test: if (xy)g = x(yg) for all x, y and every g in a generating
    // set, the operation is associative.
    for (Element g : generators())
      for (Element x = 0; x < n_; ++x)
        for (Element y = 0; y < n_; ++y)
          if (mul(mul(x, y), g) != mul(x, mul(y, g)))
            throw ValidationError("associativity fails at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                  std::to_string(g) + ")");
  }

  void fill_inverses() {
    inverse_.assign(n_, 0);
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b)
        if (mul(a, b) == 0) {
          inverse_[a] = b;
          break;
        }
  }

  std::size_t n_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

/// Members of a subgroup of some parent group, sorted ascending (so the
/// identity, index 0, is always first).
struct Subgroup {
  std::vector<Element> members;

  std::size_t order() const noexcept { return members.size(); }
  bool contains(Element x) const { return std::binary_search(members.begin(), members.end(), x); }
  bool is_trivial() const noexcept { return members.size() == 1; }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() <=> b.members.size();
    return a.members <=> b.members;
  }
};

using Mask = std::vector<char>;

inline Mask to_mask(std::size_t n, const Subgroup& h) {
  Mask m(n, 0);
  for (auto x : h.members) m[x] = 1;
  return m;
}

inline Subgroup from_mask(const Mask& m) {
  Subgroup h;
  for (Element x = 0; x < m.size(); ++x)
    if (m[x]) h.members.push_back(x);
  return h;
}

inline Subgroup whole(const CayleyGroup& g) {
  Subgroup h;
  h.members.resize(g.order());
  std::iota(h.members.begin(), h.members.end(), Element{0});
  return h;
}

inline Subgroup trivial_subgroup() { return Subgroup{{0}}; }

/// Subgroup generated by `gens`.
inline Subgroup generate(const CayleyGroup& g, std::span<const Element> gens) {
  Mask m(g.order(), 0);
  m[0] = 1;
  std::vector<Element> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (Element s : gens) {
      const Element y = g.mul(frontier[i], s);
      if (!m[y]) {
        m[y] = 1;
        frontier.push_back(y);
      }
    }
  return from_mask(m);
}

inline Subgroup generate(const CayleyGroup& g, std::initializer_list<Element> gens) {
  return generate(g, std::span<const Element>(gens.begin(), gens.size()));
}

namespace detail {

// Extends the subgroup held in (mask, members) to the one generated together
// with the new generator x, given all generators so far (x included).
inline void extend_span(const CayleyGroup& g, Mask& mask, std::vector<Element>& members,
                        std::span<const Element> gens) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : gens) {
      const Element y = g.mul(members[i], s);
      if (!mask[y]) {
        mask[y] = 1;
        members.push_back(y);
      }
    }
}

}  // namespace detail

/// Greedy generating set of the subgroup `h`: scan its members in index
/// order and keep those outside the span of the ones kept so far.
inline std::vector<Element> generators_of(const CayleyGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Mask mask(g.order(), 0);
  mask[0] = 1;
  std::vector<Element> members{0};
  for (Element x : h.members) {
    if (mask[x]) continue;
    gens.push_back(x);
    // Earlier members were closed under the older generators only; a fresh
    // BFS over all generators from every member reaches the new span.
    detail::extend_span(g, mask, members, gens);
  }
  return gens;
}

inline std::vector<Element> CayleyGroup::generators() const {
  std::vector<Element> gens;
  Mask mask(n_, 0);
  mask[0] = 1;
  std::vector<Element> members{0};
  for (Element x = 1; x < n_; ++x) {
    if (mask[x]) continue;
    gens.push_back(x);
    detail::extend_span(*this, mask, members, gens);
  }
  return gens;
}

/// Subgroup generated by h together with `extra`.
inline Subgroup join(const CayleyGroup& g, const Subgroup& h, std::span<const Element> extra) {
  Mask mask = to_mask(g.order(), h);
  std::vector<Element> members = h.members;
  std::vector<Element> gens = generators_of(g, h);
  gens.insert(gens.end(), extra.begin(), extra.end());
  detail::extend_span(g, mask, members, gens);
  return from_mask(mask);
}

inline bool is_subgroup(const CayleyGroup& g, const Subgroup& h) {
  if (h.members.empty() || h.members.front() != 0) return false;
  const Mask m = to_mask(g.order(), h);
  for (Element a : h.members) {
    if (!m[g.inverse(a)]) return false;
    for (Element b : h.members)
      if (!m[g.mul(a, b)]) return false;
  }
  return true;
}

inline bool is_normal(const CayleyGroup& g, const Subgroup& h) {
  const Mask m = to_mask(g.order(), h);
  for (Element s : g.generators())
    for (Element x : h.members)
      if (!m[g.conjugate(x, s)]) return false;
  return true;
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  Subgroup out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(out.members));
  return out;
}

/// Product set NM of two subgroups where one normalizes the other.
inline Subgroup product(const CayleyGroup& g, const Subgroup& a, const Subgroup& b) {
  Mask m(g.order(), 0);
  for (Element x : a.members)
    for (Element y : b.members) m[g.mul(x, y)] = 1;
  return from_mask(m);
}

/// Table from a breadth-first enumeration: element i > 0 equals
/// parent[i] * generator gen_of[i], and right[i * k + s] is i * generator s.
inline std::vector<Element> table_from_enumeration(std::size_t n, std::size_t k, std::span<const Element> right,
                                                   std::span<const Element> parent,
                                                   std::span<const std::uint32_t> gen_of) {
  std::vector<Element> t(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i * n] = static_cast<Element>(i);
    for (std::size_t j = 1; j < n; ++j)
      t[i * n + j] = right[static_cast<std::size_t>(t[i * n + parent[j]]) * k + gen_of[j]];
  }
  return t;
}

/// Group generated by permutations of {0..degree-1}; composition is
/// (a*b)(x) = a(b(x)). Elements are numbered in breadth-first order.
inline CayleyGroup from_permutations(const std::vector<std::vector<std::uint32_t>>& gens,
                                     std::size_t bound = kDefaultOrderBound) {
  using Perm = std::vector<std::uint32_t>;
  const std::size_t degree = gens.empty() ? 0 : gens.front().size();
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::map<Perm, Element> index{{id, 0}};
  std::vector<Perm> elems{id};
  std::vector<Element> parent{0};
  std::vector<std::uint32_t> gen_of{0};
  std::vector<Element> right;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Perm p(degree);
      for (std::size_t x = 0; x < degree; ++x) p[x] = elems[i][gens[s][x]];
      auto [it, fresh] = index.emplace(p, static_cast<Element>(elems.size()));
      if (fresh) {
        if (elems.size() >= bound) throw BudgetExceeded("permutation group exceeds order bound", elems.size());
        elems.push_back(std::move(p));
        parent.push_back(static_cast<Element>(i));
        gen_of.push_back(static_cast<std::uint32_t>(s));
      }
      right.push_back(it->second);
    }
  }
  return CayleyGroup(TrustedTable{}, elems.size(),
                     table_from_enumeration(elems.size(), gens.size(), right, parent, gen_of));
}

inline CayleyGroup cyclic(std::size_t n) {
  if (n == 0) throw ValidationError("cyclic group order must be positive");
  std::vector<Element> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Element>((a + b) % n);
  return CayleyGroup(TrustedTable{}, n, std::move(t));
}

/// Dihedral group of order 2k (symmetries of a k-gon), k >= 1.
inline CayleyGroup dihedral(std::size_t k) {
  if (k == 0) throw ValidationError("dihedral parameter must be positive");
  if (k == 1) return cyclic(2);
  if (k == 2) {
    std::vector<std::uint32_t> a{1, 0, 2, 3}, b{0, 1, 3, 2};
    return from_permutations({a, b});
  }
  std::vector<std::uint32_t> rot(k), ref(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    rot[i] = static_cast<std::uint32_t>((i + 1) % k);
    ref[i] = static_cast<std::uint32_t>((k - i) % k);
  }
  return from_permutations({rot, ref});
}

inline CayleyGroup symmetric(std::size_t k) {
  if (k <= 1) return CayleyGroup();
  std::vector<std::uint32_t> swap(k), cycle(k);
  std::iota(swap.begin(), swap.end(), 0u);
  std::swap(swap[0], swap[1]);
  for (std::uint32_t i = 0; i < k; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % k);
  return from_permutations({swap, cycle});
}

inline CayleyGroup alternating(std::size_t k) {
  if (k <= 2) return CayleyGroup();
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::uint32_t i = 2; i < k; ++i) {
    std::vector<std::uint32_t> c(k);
    std::iota(c.begin(), c.end(), 0u);
    c[0] = 1;
    c[1] = i;
    c[i] = 0;
    gens.push_back(c);
  }
  return from_permutations(gens);
}

/// Quaternion group Q8 as permutations of {+-1, +-i, +-j, +-k}.
inline CayleyGroup quaternion() {
  // Points 0..7 = 1, i, j, k, -1, -i, -j, -k; generators are left
  // multiplication by i and by j.
  std::vector<std::uint32_t> li{1, 4, 3, 6, 5, 0, 7, 2}, lj{2, 7, 4, 1, 6, 3, 0, 5};
  return from_permutations({li, lj});
}

/// Direct product; pair (a, b) has index a * |H| + b.
inline CayleyGroup direct_product(const CayleyGroup& g, const CayleyGroup& h,
                                  std::size_t bound = std::size_t(1) << 24) {
  const std::size_t n = g.order() * h.order();
  if (n > bound) throw BudgetExceeded("direct product exceeds order bound", n);
  const std::size_t m = h.order();
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x * n + y] = static_cast<Element>(g.mul(static_cast<Element>(x / m), static_cast<Element>(y / m)) * m +
                                          h.mul(static_cast<Element>(x % m), static_cast<Element>(y % m)));
  return CayleyGroup(TrustedTable{}, n, std::move(t));
}

/// Direct product of cyclic groups of the given orders.
inline CayleyGroup abelian(const std::vector<std::size_t>& orders) {
  CayleyGroup g;
  for (auto k : orders) g = direct_product(g, cyclic(k));
  return g;
}

/// A subgroup realized as a group of its own. `embedding[i]` is the parent
/// element corresponding to local element i (identity first).
struct SubgroupGroup {
  CayleyGroup group;
  std::vector<Element> embedding;
};

inline SubgroupGroup subgroup_group(const CayleyGroup& g, const Subgroup& h) {
  const std::size_t n = h.order();
  std::vector<Element> local(g.order(), 0);
  for (std::size_t i = 0; i < n; ++i) local[h.members[i]] = static_cast<Element>(i);
  std::vector<Element> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = local[g.mul(h.members[i], h.members[j])];
  return {CayleyGroup(TrustedTable{}, n, std::move(t)), h.members};
}

/// Quotient by a normal subgroup. Cosets are numbered by their smallest
/// member, ascending, so the identity coset is 0. `coset_of[x]` is the coset
/// index of parent element x.
struct QuotientGroup {
  CayleyGroup group;
  std::vector<Element> coset_of;
  std::vector<Element> representative;
};

inline QuotientGroup quotient(const CayleyGroup& g, const Subgroup& n) {
  if (!is_subgroup(g, n) || !is_normal(g, n)) throw ValidationError("quotient requires a normal subgroup");
  const std::size_t size = g.order();
  std::vector<Element> coset_of(size, static_cast<Element>(size));
  std::vector<Element> reps;
  for (Element x = 0; x < size; ++x) {
    if (coset_of[x] != size) continue;
    const auto idx = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element y : n.members) coset_of[g.mul(x, y)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<Element> t(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) t[i * q + j] = coset_of[g.mul(reps[i], reps[j])];
  return {CayleyGroup(TrustedTable{}, q, std::move(t)), std::move(coset_of), std::move(reps)};
}

/// Image of a subgroup under the quotient map.
inline Subgroup image_in_quotient(const QuotientGroup& q, const Subgroup& h) {
  Mask m(q.group.order(), 0);
  for (Element x : h.members) m[q.coset_of[x]] = 1;
  return from_mask(m);
}

/// Full preimage of a quotient subgroup.
inline Subgroup preimage(const QuotientGroup& q, const Subgroup& h) {
  const Mask hm = to_mask(q.group.order(), h);
  Subgroup out;
  for (Element x = 0; x < q.coset_of.size(); ++x)
    if (hm[q.coset_of[x]]) out.members.push_back(x);
  return out;
}

}  // namespace coxdec::group
