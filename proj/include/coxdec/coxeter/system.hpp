#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/exact/symmatrix.hpp"
#include "coxdec/label.hpp"

namespace coxdec::coxeter {

using exact::CycloNumber;
using exact::Rational;
using exact::SymMatrix;

/// A Coxeter system (W, S) with |S| = rank, given by its label matrix.
class CoxeterSystem {
public:
  CoxeterSystem() = default;

  /// Validates m[i][i] = 1 and m[i][j] = m[j][i] >= 2.
  explicit CoxeterSystem(std::vector<std::vector<Label>> m) : rank_(m.size()) {
    labels_.reserve(rank_ * rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      if (m[i].size() != rank_)
        throw ValidationError("row " + std::to_string(i) + " of the Coxeter matrix has " +
                              std::to_string(m[i].size()) + " entries, expected " + std::to_string(rank_));
      labels_.insert(labels_.end(), m[i].begin(), m[i].end());
    }
    for (std::size_t i = 0; i < rank_; ++i) {
      if (label(i, i) != Label(1))
        throw ValidationError("diagonal entry (" + std::to_string(i) + "," + std::to_string(i) + ") must be 1");
      for (std::size_t j = i + 1; j < rank_; ++j) {
        if (label(i, j) != label(j, i))
          throw ValidationError("Coxeter matrix is not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        if (label(i, j) == Label(1))
          throw ValidationError("off-diagonal entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") must be at least 2");
      }
    }
  }

  /// Rank-n system with every off-diagonal label 2 (the group (Z/2)^n).
  static CoxeterSystem commuting(std::size_t n) {
    std::vector<std::vector<Label>> m(n, std::vector<Label>(n, Label(2)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Label(1);
    return CoxeterSystem(std::move(m));
  }

  std::size_t rank() const noexcept { return rank_; }
  Label label(std::size_t i, std::size_t j) const { return labels_[i * rank_ + j]; }

  std::vector<std::vector<Label>> matrix() const {
    std::vector<std::vector<Label>> m(rank_);
    for (std::size_t i = 0; i < rank_; ++i) m[i].assign(labels_.begin() + i * rank_, labels_.begin() + (i + 1) * rank_);
    return m;
  }

  /// Returns a copy with the given labels set symmetrically.
  CoxeterSystem with_label(std::size_t i, std::size_t j, Label m) const {
    auto mat = matrix();
    mat[i][j] = m;
    mat[j][i] = m;
    return CoxeterSystem(std::move(mat));
  }

  /// Induced subsystem on `indices`, in the given order.
  CoxeterSystem restricted(const std::vector<std::size_t>& indices) const {
    std::vector<std::vector<Label>> m(indices.size(), std::vector<Label>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a)
      for (std::size_t b = 0; b < indices.size(); ++b) m[a][b] = label(indices[a], indices[b]);
    return CoxeterSystem(std::move(m));
  }

  /// System with generators renumbered so that new generator k is old perm[k].
  CoxeterSystem permuted(const std::vector<std::size_t>& perm) const { return restricted(perm); }

  /// Disjoint union: the generators of `other` follow ours and commute with them.
  CoxeterSystem disjoint_union(const CoxeterSystem& other) const {
    const std::size_t n = rank_ + other.rank_;
    std::vector<std::vector<Label>> m(n, std::vector<Label>(n, Label(2)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Label(1);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) m[i][j] = label(i, j);
    for (std::size_t i = 0; i < other.rank_; ++i)
      for (std::size_t j = 0; j < other.rank_; ++j) m[rank_ + i][rank_ + j] = other.label(i, j);
    return CoxeterSystem(std::move(m));
  }

  /// lcm of 2m over finite off-diagonal labels, at least 2: the smallest
  /// cyclotomic field containing every Tits-form entry.
  std::uint32_t conductor() const {
    std::uint32_t L = 2;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i + 1; j < rank_; ++j)
        if (label(i, j).is_finite()) L = std::lcm(L, 2 * label(i, j).value());
    return L;
  }

  friend bool operator==(const CoxeterSystem&, const CoxeterSystem&) = default;

private:
  std::size_t rank_ = 0;
  std::vector<Label> labels_;
};

/// Tits form: B(e_s, e_s) = 1, B(e_s, e_t) = -cos(pi / m_st), with -1 for m_st = inf.
inline SymMatrix tits_form(const CoxeterSystem& cs) {
  const std::uint32_t L = cs.conductor();
  SymMatrix b(cs.rank());
  for (std::size_t i = 0; i < cs.rank(); ++i) {
    b.set(i, i, CycloNumber(Rational(1), L));
    for (std::size_t j = i + 1; j < cs.rank(); ++j) b.set(i, j, -exact::cos_pi_over(cs.label(i, j), L));
  }
  return b;
}

struct Component {
  std::vector<std::size_t> indices;  ///< increasing generator indices in the parent
  CoxeterSystem system;
};

/// Connected components of the Coxeter graph (edges where m_st >= 3 or inf),
/// ordered by smallest index.
inline std::vector<Component> components(const CoxeterSystem& cs) {
  const std::size_t n = cs.rank();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cs.label(i, j).is_edge()) parent[find(i)] = find(j);
  std::vector<Component> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.push_back({});
    }
    out[slot[root]].indices.push_back(i);
  }
  for (auto& c : out) c.system = cs.restricted(c.indices);
  return out;
}

inline bool is_connected(const CoxeterSystem& cs) { return cs.rank() > 0 && components(cs).size() == 1; }

/// Graphviz rendering; unlabeled edges mean m = 3, and inf is written "inf".
inline std::string to_dot(const CoxeterSystem& cs, const std::string& name = "coxeter") {
  std::string out = "graph " + name + " {\n";
  for (std::size_t i = 0; i < cs.rank(); ++i) out += "  s" + std::to_string(i) + ";\n";
  for (std::size_t i = 0; i < cs.rank(); ++i)
    for (std::size_t j = i + 1; j < cs.rank(); ++j) {
      const Label m = cs.label(i, j);
      if (!m.is_edge()) continue;
      out += "  s" + std::to_string(i) + " -- s" + std::to_string(j);
      if (m != Label(3)) out += " [label=\"" + m.to_string() + "\"]";
      out += ";\n";
    }
  out += "}\n";
  return out;
}

}  // namespace coxdec::coxeter
