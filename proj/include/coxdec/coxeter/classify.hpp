#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coxdec/coxeter/system.hpp"
#include "coxdec/errors.hpp"

namespace coxdec::coxeter {

using exact::Signature;

enum class Family { A, B, D, E, F, H, I, AffineA, AffineB, AffineC, AffineD, AffineE, AffineF, AffineG };

/// A classical irreducible Coxeter type. `index` is the subscript (for affine
/// types the rank is index + 1); `label` is the m of I2(m).
struct CoxeterType {
  Family family = Family::A;
  std::size_t index = 1;
  std::uint32_t label = 0;

  bool is_affine() const noexcept { return family >= Family::AffineA; }
  std::size_t rank() const noexcept { return is_affine() ? index + 1 : (family == Family::I ? 2 : index); }

  std::string name() const {
    const std::string n = std::to_string(index);
    switch (family) {
      case Family::A: return "A" + n;
      case Family::B: return "B" + n;
      case Family::D: return "D" + n;
      case Family::E: return "E" + n;
      case Family::F: return "F" + n;
      case Family::H: return "H" + n;
      case Family::I: return "I2(" + std::to_string(label) + ")";
      case Family::AffineA: return "~A" + n;
      case Family::AffineB: return "~B" + n;
      case Family::AffineC: return "~C" + n;
      case Family::AffineD: return "~D" + n;
      case Family::AffineE: return "~E" + n;
      case Family::AffineF: return "~F" + n;
      case Family::AffineG: return "~G" + n;
    }
    return "?";
  }

  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
};

namespace detail {

inline std::vector<std::vector<Label>> blank(std::size_t n) {
  std::vector<std::vector<Label>> m(n, std::vector<Label>(n, Label(2)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Label(1);
  return m;
}

inline void edge(std::vector<std::vector<Label>>& m, std::size_t i, std::size_t j, Label l = Label(3)) {
  m[i][j] = l;
  m[j][i] = l;
}

// Star with a centre (vertex 0) and arms of the given lengths.
inline std::vector<std::vector<Label>> star(const std::vector<std::size_t>& arms) {
  std::size_t n = 1;
  for (auto a : arms) n += a;
  auto m = blank(n);
  std::size_t next = 1;
  for (auto a : arms) {
    std::size_t prev = 0;
    for (std::size_t k = 0; k < a; ++k, ++next) {
      edge(m, prev, next);
      prev = next;
    }
  }
  return m;
}

inline std::vector<std::vector<Label>> path(const std::vector<Label>& labels) {
  auto m = blank(labels.size() + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) edge(m, i, i + 1, labels[i]);
  return m;
}

inline std::vector<Label> threes(std::size_t k) { return std::vector<Label>(k, Label(3)); }

}  // namespace detail

/// The standard diagram of a classical type. Throws on parameters outside the
/// classical list (e.g. D3, E9, ~B2).
inline CoxeterSystem standard_system(const CoxeterType& t) {
  using namespace detail;
  const std::size_t n = t.index;
  auto bad = [&] { return ValidationError("no classical Coxeter type " + t.name()); };
  switch (t.family) {
    case Family::A:
      if (n < 1) throw bad();
      return CoxeterSystem(path(threes(n - 1)));
    case Family::B: {
      if (n < 2) throw bad();
      auto l = threes(n - 1);
      l.back() = Label(4);
      return CoxeterSystem(path(l));
    }
    case Family::D:
      if (n < 4) throw bad();
      return CoxeterSystem(star({1, 1, n - 3}));
    case Family::E:
      if (n < 6 || n > 8) throw bad();
      return CoxeterSystem(star({1, 2, n - 4}));
    case Family::F:
      if (n != 4) throw bad();
      return CoxeterSystem(path({Label(3), Label(4), Label(3)}));
    case Family::H:
      if (n != 3 && n != 4) throw bad();
      {
        auto l = threes(n - 1);
        l.front() = Label(5);
        return CoxeterSystem(path(l));
      }
    case Family::I:
      if (t.label < 2) throw bad();
      return CoxeterSystem(path({Label(t.label)}));
    case Family::AffineA: {
      if (n < 1) throw bad();
      if (n == 1) return CoxeterSystem(path({Label::infinity()}));
      auto m = path(threes(n));
      edge(m, 0, n);
      return CoxeterSystem(m);
    }
    case Family::AffineB: {
      if (n < 3) throw bad();
      // Fork at one end, label 4 at the other.
      auto m = blank(n + 1);
      edge(m, 0, 2);
      edge(m, 1, 2);
      for (std::size_t i = 2; i < n; ++i) edge(m, i, i + 1, i + 1 == n ? Label(4) : Label(3));
      return CoxeterSystem(m);
    }
    case Family::AffineC: {
      if (n < 2) throw bad();
      auto l = threes(n);
      l.front() = Label(4);
      l.back() = Label(4);
      return CoxeterSystem(path(l));
    }
    case Family::AffineD: {
      if (n < 4) throw bad();
      if (n == 4) return CoxeterSystem(star({1, 1, 1, 1}));
      auto m = blank(n + 1);
      edge(m, 0, 2);
      edge(m, 1, 2);
      for (std::size_t i = 2; i + 2 < n; ++i) edge(m, i, i + 1);
      edge(m, n - 2, n - 1);
      edge(m, n - 2, n);
      return CoxeterSystem(m);
    }
    case Family::AffineE:
      if (n == 6) return CoxeterSystem(star({2, 2, 2}));
      if (n == 7) return CoxeterSystem(star({1, 3, 3}));
      if (n == 8) return CoxeterSystem(star({1, 2, 5}));
      throw bad();
    case Family::AffineF:
      if (n != 4) throw bad();
      return CoxeterSystem(path({Label(3), Label(3), Label(4), Label(3)}));
    case Family::AffineG:
      if (n != 2) throw bad();
      return CoxeterSystem(path({Label(6), Label(3)}));
  }
  throw bad();
}

/// Every classical type (finite and affine) whose diagram has exactly `rank`
/// vertices, excluding the rank-2 dihedral family which is parameterized by
/// its label.
inline std::vector<CoxeterType> classical_types_of_rank(std::size_t rank) {
  std::vector<CoxeterType> out;
  auto add = [&](Family f, std::size_t n) { out.push_back({f, n, 0}); };
  if (rank >= 1 && rank != 2) add(Family::A, rank);
  if (rank >= 3) add(Family::B, rank);
  if (rank >= 4) add(Family::D, rank);
  if (rank >= 6 && rank <= 8) add(Family::E, rank);
  if (rank == 4) add(Family::F, 4);
  if (rank == 3 || rank == 4) add(Family::H, rank);
  if (rank >= 3) add(Family::AffineA, rank - 1);
  if (rank >= 4) add(Family::AffineB, rank - 1);
  if (rank >= 3) add(Family::AffineC, rank - 1);
  if (rank >= 5) add(Family::AffineD, rank - 1);
  if (rank >= 7 && rank <= 9) add(Family::AffineE, rank - 1);
  if (rank == 5) add(Family::AffineF, 4);
  if (rank == 3) add(Family::AffineG, 2);
  return out;
}

namespace detail {

// Per-vertex invariant: sorted non-commuting labels at the vertex.
inline std::vector<std::vector<Label>> vertex_invariants(const CoxeterSystem& cs) {
  std::vector<std::vector<Label>> inv(cs.rank());
  for (std::size_t i = 0; i < cs.rank(); ++i) {
    for (std::size_t j = 0; j < cs.rank(); ++j)
      if (i != j && cs.label(i, j) != Label(2)) inv[i].push_back(cs.label(i, j));
    std::sort(inv[i].begin(), inv[i].end());
  }
  return inv;
}

/// Label-preserving bijection from a's generators onto b's, if any.
inline std::optional<std::vector<std::size_t>> diagram_isomorphism(const CoxeterSystem& a, const CoxeterSystem& b) {
  const std::size_t n = a.rank();
  if (b.rank() != n) return std::nullopt;
  const auto ia = vertex_invariants(a);
  const auto ib = vertex_invariants(b);
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<std::size_t> image(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t] || ia[v] != ib[t]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = a.label(v, u) == b.label(t, image[u]);
      if (!ok) continue;
      used[t] = true;
      image[v] = t;
      if (extend(v + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

}  // namespace detail

/// Matches a connected system against the classical finite and affine lists.
inline std::optional<CoxeterType> recognize(const CoxeterSystem& cs) {
  if (cs.rank() == 1) return CoxeterType{Family::A, 1, 0};
  if (cs.rank() == 2) {
    const Label m = cs.label(0, 1);
    if (m.is_infinite()) return CoxeterType{Family::AffineA, 1, 0};
    if (m == Label(3)) return CoxeterType{Family::A, 2, 0};
    if (m == Label(4)) return CoxeterType{Family::B, 2, 0};
    if (m.value() >= 5) return CoxeterType{Family::I, 2, m.value()};
    return std::nullopt;
  }
  for (const auto& t : classical_types_of_rank(cs.rank()))
    if (detail::diagram_isomorphism(cs, standard_system(t))) return t;
  return std::nullopt;
}

/// |W| for a finite classical type.
inline mpz_class finite_order(const CoxeterType& t) {
  auto factorial = [](std::size_t n) {
    mpz_class f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
    return f;
  };
  const std::size_t n = t.index;
  switch (t.family) {
    case Family::A: return factorial(n + 1);
    case Family::B: return (mpz_class(1) << static_cast<mp_bitcnt_t>(n)) * factorial(n);
    case Family::D: return (mpz_class(1) << static_cast<mp_bitcnt_t>(n - 1)) * factorial(n);
    case Family::E: return n == 6 ? mpz_class(51840) : n == 7 ? mpz_class(2903040) : mpz_class(696729600);
    case Family::F: return 1152;
    case Family::H: return n == 3 ? mpz_class(120) : mpz_class(14400);
    case Family::I: return 2 * static_cast<unsigned long>(t.label);
    default: throw ValidationError("type " + t.name() + " is infinite");
  }
}

enum class Kind { Finite, Affine, IndefiniteInfinite };

inline std::string to_string(Kind k) {
  switch (k) {
    case Kind::Finite: return "Finite";
    case Kind::Affine: return "Affine";
    case Kind::IndefiniteInfinite: return "IndefiniteInfinite";
  }
  return "?";
}

struct CoxeterClass {
  Kind kind = Kind::Finite;
  Signature signature;
  std::optional<CoxeterType> type;
};

/// Classifies a connected system by the signature of its Tits form and
/// cross-checks the verdict against the diagram recognizer. A disagreement
/// raises InternalError.
inline CoxeterClass classify(const CoxeterSystem& cs, unsigned budget_bits = exact::kDefaultPrecisionBudget) {
  if (!is_connected(cs)) throw ValidationError("classify requires a connected Coxeter system");
  CoxeterClass out;
  const std::size_t n = cs.rank();
  out.signature = exact::signature(tits_form(cs), budget_bits);
  const auto& s = out.signature;
  if (s.p == n)
    out.kind = Kind::Finite;
  else if (s.p + 1 == n && s.r == 1)
    out.kind = Kind::Affine;
  else
    out.kind = Kind::IndefiniteInfinite;
  out.type = recognize(cs);

  const bool rec_finite = out.type && !out.type->is_affine();
  const bool rec_affine = out.type && out.type->is_affine();
  if ((out.kind == Kind::Finite) != rec_finite || (out.kind == Kind::Affine) != rec_affine)
    throw InternalError("signature " + exact::to_string(s) + " disagrees with diagram recognizer (" +
                        (out.type ? out.type->name() : std::string("unrecognized")) + ")");
  return out;
}

/// The five signature facts for an irreducible system. The first two use the
/// diagram recognizer as the independent witness of finiteness / affineness.
struct SignatureFacts {
  Signature signature;
  bool finite_iff_positive_definite = false;  ///< p = n  <=>  W finite
  bool affine_iff_corank_one = false;         ///< p = n-1, r = 1  <=>  W affine
  bool semidefinite_kernel_at_most_one = false;  ///< q = 0  =>  r <= 1
  bool small_rank_almost_positive = false;       ///< n <= 4  =>  p >= n-1
  bool large_rank_p_at_least_three = false;      ///< n >= 4  =>  p >= 3

  bool all() const noexcept {
    return finite_iff_positive_definite && affine_iff_corank_one && semidefinite_kernel_at_most_one &&
           small_rank_almost_positive && large_rank_p_at_least_three;
  }
};

inline SignatureFacts signature_facts_check(const CoxeterSystem& cs,
                                            unsigned budget_bits = exact::kDefaultPrecisionBudget) {
  if (!is_connected(cs)) throw ValidationError("signature facts require a connected Coxeter system");
  SignatureFacts f;
  const std::size_t n = cs.rank();
  const auto s = exact::signature(tits_form(cs), budget_bits);
  f.signature = s;
  const auto t = recognize(cs);
  const bool finite = t && !t->is_affine();
  const bool affine = t && t->is_affine();
  f.finite_iff_positive_definite = (s.p == n) == finite;
  f.affine_iff_corank_one = (s.p + 1 == n && s.r == 1) == affine;
  f.semidefinite_kernel_at_most_one = s.q != 0 || s.r <= 1;
  f.small_rank_almost_positive = n > 4 || s.p + 1 >= n;
  f.large_rank_p_at_least_three = n < 4 || s.p >= 3;
  return f;
}

/// Canonical text form of a labeled diagram, invariant under renumbering of
/// generators: classical type names when recognized, otherwise the
/// lexicographically least upper-triangle label sequence over all orderings
/// (searched exhaustively up to rank 10).
inline std::string canonical_name(const CoxeterSystem& cs) {
  if (is_connected(cs))
    if (auto t = recognize(cs)) return t->name();
  const std::size_t n = cs.rank();
  auto code = [](Label l) { return l.is_infinite() ? 0u : l.value(); };
  const auto inv = detail::vertex_invariants(cs);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return inv[a] < inv[b]; });
  std::vector<std::uint32_t> best;
  if (n <= 10) {
    std::vector<std::size_t> chosen;
    std::vector<bool> used(n, false);
    std::vector<std::uint32_t> seq;
    // Vertex at position k must carry the k-th invariant of the sorted list,
    // which keeps the search inside the invariant-respecting orderings.
    std::function<void()> rec = [&] {
      const std::size_t k = chosen.size();
      if (k == n) {
        if (best.empty() || seq < best) best = seq;
        return;
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (used[v] || inv[v] != inv[order[k]]) continue;
        const std::size_t mark = seq.size();
        for (std::size_t u = 0; u < k; ++u) seq.push_back(code(cs.label(chosen[u], v)));
        if (!best.empty()) {
          const auto prefix_end = best.begin() + static_cast<long>(seq.size());
          if (std::lexicographical_compare(best.begin(), prefix_end, seq.begin(), seq.end())) {
            seq.resize(mark);
            continue;
          }
        }
        used[v] = true;
        chosen.push_back(v);
        rec();
        chosen.pop_back();
        used[v] = false;
        seq.resize(mark);
      }
    };
    rec();
  } else {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t u = 0; u < k; ++u) best.push_back(code(cs.label(order[u], order[k])));
  }
  std::string out = "W[" + std::to_string(n) + ":";
  for (std::size_t i = 0; i < best.size(); ++i) {
    out += i ? "," : "";
    out += best[i] == 0 ? std::string("inf") : std::to_string(best[i]);
  }
  return out + "]";
}

}  // namespace coxdec::coxeter
