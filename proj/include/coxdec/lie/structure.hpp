#pragma once

// Ideals and structural predicates: derived and central series, centre,
// perfectness, solvability, nilpotency.

#include <vector>

#include "coxdec/lie/algebra.hpp"
#include "coxdec/lie/linalg.hpp"

namespace coxdec::lie {

/// [A, B] as a subspace.
inline Subspace bracket(const LieAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<Vec> out;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      Vec z = l.bracket(x, y);
      if (!is_zero(z)) out.push_back(std::move(z));
    }
  return Subspace::span(out, l.dim());
}

inline Subspace derived(const LieAlgebra& l) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      Vec z(l.dim());
      for (const auto& [k, v] : l.basis_bracket(i, j)) z[k] = v;
      if (!is_zero(z)) out.push_back(std::move(z));
    }
  return Subspace::span(out, l.dim());
}

inline Subspace center(const LieAlgebra& l) {
  // x central iff sum_i x_i c(i,j,k) = 0 for all j,k.
  const std::size_t d = l.dim();
  SparseEliminator eq(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      SparseEliminator::Row row;
      for (std::size_t i = 0; i < d; ++i)
        if (l.c(i, j, k) != 0) row[i] = l.c(i, j, k);
      if (!row.empty()) eq.add(std::move(row));
    }
  return Subspace::span(eq.solutions(), d);
}

inline bool is_ideal(const LieAlgebra& l, const Subspace& i) {
  return i.contains(bracket(l, Subspace::whole(l.dim()), i));
}

/// L, [L,L], [[L,L],[L,L]], ... until stationary.
inline std::vector<Subspace> derived_series(const LieAlgebra& l) {
  std::vector<Subspace> s{Subspace::whole(l.dim())};
  while (true) {
    Subspace next = bracket(l, s.back(), s.back());
    if (next == s.back()) return s;
    s.push_back(std::move(next));
  }
}

/// L, [L,L], [L,[L,L]], ... until stationary.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& l) {
  const Subspace whole = Subspace::whole(l.dim());
  std::vector<Subspace> s{whole};
  while (true) {
    Subspace next = bracket(l, whole, s.back());
    if (next == s.back()) return s;
    s.push_back(std::move(next));
  }
}

inline bool is_perfect(const LieAlgebra& l) { return derived(l).dim() == l.dim(); }
inline bool is_solvable(const LieAlgebra& l) { return derived_series(l).back().dim() == 0; }
inline bool is_nilpotent(const LieAlgebra& l) { return lower_central_series(l).back().dim() == 0; }

struct NilradicalReport {
  bool solvable = false;
  bool derived_nilpotent = false;
  bool algebra_nilpotent = false;
  std::size_t derived_codim = 0;

  /// The nilradical equals [L,L] and has codimension 1: [L,L] is a nilpotent
  /// ideal of codimension 1 and L itself is not nilpotent, so the largest
  /// nilpotent ideal lies strictly between [L,L] (inclusive) and L.
  bool holds() const { return solvable && derived_nilpotent && !algebra_nilpotent && derived_codim == 1; }
};

inline NilradicalReport nilradical_codim_check(const LieAlgebra& l) {
  NilradicalReport r;
  r.solvable = is_solvable(l);
  const Subspace d = derived(l);
  r.derived_codim = l.dim() - d.dim();
  r.derived_nilpotent = d.dim() == 0 || is_nilpotent(subalgebra(l, d.basis()));
  r.algebra_nilpotent = is_nilpotent(l);
  return r;
}

}  // namespace coxdec::lie
