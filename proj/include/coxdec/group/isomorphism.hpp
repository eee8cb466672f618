#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxdec/group/cayley.hpp"
#include "coxdec/group/lattice.hpp"

namespace coxdec::group {

/// Prime-power orders of the cyclic factors of a finite abelian group, sorted.
inline std::vector<std::size_t> abelian_invariants_of_abelian(const CayleyGroup& a) {
  std::vector<std::size_t> out;
  std::size_t n = a.order();
  std::vector<std::size_t> orders(a.order());
  for (Element x = 0; x < a.order(); ++x) orders[x] = a.element_order(x);
  for (std::size_t p = 2; n > 1; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    // c[k] = log_p |{x : x^(p^k) = 1}|; the number of cyclic factors of order
    // at least p^k is c[k] - c[k-1].
    std::vector<std::size_t> logs{0};
    for (std::size_t pk = p;; pk *= p) {
      std::size_t count = 0;
      for (auto o : orders)
        if (pk % o == 0) ++count;
      std::size_t e = 0;
      for (std::size_t c = count; c > 1; c /= p) ++e;
      logs.push_back(e);
      if (logs.back() == logs[logs.size() - 2]) break;
    }
    std::size_t pk = 1;
    for (std::size_t k = 1; k + 1 < logs.size(); ++k) {
      pk *= p;
      const std::size_t at_least_k = logs[k] - logs[k - 1];
      const std::size_t at_least_next = logs[k + 1] - logs[k];
      for (std::size_t i = 0; i < at_least_k - at_least_next; ++i) out.push_back(pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Isomorphism invariants used to rule out isomorphism cheaply and to label
/// groups that no named family matches.
struct Fingerprint {
  std::size_t order = 0;
  std::map<std::size_t, std::size_t> element_orders;               ///< order -> count
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> classes;  ///< (class size, element order) -> count
  std::vector<std::size_t> abelianization;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  std::string to_string() const {
    std::string s = "order=" + std::to_string(order) + ";orders=";
    for (auto [o, c] : element_orders) s += std::to_string(o) + "^" + std::to_string(c) + ",";
    s += ";classes=";
    for (auto [k, c] : classes)
      s += std::to_string(k.first) + "/" + std::to_string(k.second) + "^" + std::to_string(c) + ",";
    s += ";ab=";
    for (auto a : abelianization) s += std::to_string(a) + ",";
    return s;
  }
};

inline Fingerprint fingerprint(const CayleyGroup& g) {
  Fingerprint f;
  f.order = g.order();
  for (Element x = 0; x < g.order(); ++x) ++f.element_orders[g.element_order(x)];
  for (const auto& cls : conjugacy_classes(g)) ++f.classes[{cls.size(), g.element_order(cls.front())}];
  const auto q = quotient(g, derived_subgroup(g));
  f.abelianization = abelian_invariants_of_abelian(q.group);
  return f;
}

namespace detail {

// Per-element invariant preserved by isomorphisms: (element order, class size).
inline std::vector<std::pair<std::size_t, std::size_t>> element_invariants(const CayleyGroup& g) {
  std::vector<std::pair<std::size_t, std::size_t>> inv(g.order());
  for (const auto& cls : conjugacy_classes(g))
    for (Element x : cls) inv[x] = {g.element_order(x), cls.size()};
  return inv;
}

// Extends a partial assignment of generator images to a map on the subgroup
// they generate. Returns false on an inconsistency or a non-injective map.
inline bool extend_map(const CayleyGroup& g, const CayleyGroup& h, std::span<const Element> gens,
                       std::span<const Element> images, std::vector<Element>& map, std::vector<char>& hit) {
  const auto unset = static_cast<Element>(g.order());
  std::fill(map.begin(), map.end(), unset);
  std::fill(hit.begin(), hit.end(), 0);
  map[0] = 0;
  hit[0] = 1;
  std::vector<Element> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Element x = frontier[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = g.mul(x, gens[k]);
      const Element img = h.mul(map[x], images[k]);
      if (map[y] == unset) {
        if (hit[img]) return false;
        hit[img] = 1;
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

/// Backtracking over images of a small generating set, with candidates
/// restricted to elements sharing (order, class size). Collects up to `limit`
/// isomorphisms g -> h, each as a vector map[x] = image.
inline std::vector<std::vector<Element>> isomorphisms(const CayleyGroup& g, const CayleyGroup& h, std::size_t limit,
                                                      bool check_fingerprints = true) {
  if (g.order() != h.order()) return {};
  if (check_fingerprints && !(fingerprint(g) == fingerprint(h))) return {};
  const auto ig = detail::element_invariants(g);
  const auto ih = detail::element_invariants(h);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> by_inv;
  for (Element y = 0; y < h.order(); ++y) by_inv[ih[y]].push_back(y);

  // Generators chosen greedily among the elements with the fewest candidates.
  std::vector<Element> order(g.order() > 0 ? g.order() - 1 : 0);
  std::iota(order.begin(), order.end(), Element{1});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    const auto ca = by_inv[ig[a]].size(), cb = by_inv[ig[b]].size();
    if (ca != cb) return ca < cb;
    return ig[a].first > ig[b].first;
  });
  std::vector<Element> gens;
  {
    Mask mask(g.order(), 0);
    mask[0] = 1;
    std::vector<Element> members{0};
    for (Element x : order) {
      if (members.size() == g.order()) break;
      if (mask[x]) continue;
      gens.push_back(x);
      detail::extend_span(g, mask, members, gens);
    }
  }

  std::vector<std::vector<Element>> found;
  std::vector<Element> images(gens.size());
  std::vector<Element> map(g.order());
  std::vector<char> hit(h.order());
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (found.size() >= limit) return;
    if (k == gens.size()) {
      if (detail::extend_map(g, h, gens, images, map, hit)) found.push_back(map);
      return;
    }
    for (Element y : by_inv[ig[gens[k]]]) {
      images[k] = y;
      if (!detail::extend_map(g, h, std::span(gens).first(k + 1), std::span(images).first(k + 1), map, hit)) continue;
      search(k + 1);
      if (found.size() >= limit) return;
    }
  };
  search(0);
  return found;
}

/// An explicit isomorphism g -> h when one exists.
inline std::optional<std::vector<Element>> is_isomorphic(const CayleyGroup& g, const CayleyGroup& h) {
  auto all = isomorphisms(g, h, 1);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

/// Checks that `map` is a bijective homomorphism g -> h.
inline bool is_isomorphism(const CayleyGroup& g, const CayleyGroup& h, std::span<const Element> map) {
  if (g.order() != h.order() || map.size() != g.order()) return false;
  std::vector<char> hit(h.order(), 0);
  for (Element x : map) {
    if (x >= h.order() || hit[x]) return false;
    hit[x] = 1;
  }
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

inline std::vector<std::vector<Element>> automorphisms(const CayleyGroup& g) {
  return isomorphisms(g, g, static_cast<std::size_t>(-1), false);
}

}  // namespace coxdec::group
