#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/exact/cyclotomic.hpp"

namespace coxdec::exact {

/// (p, q, r): dimensions of a maximal positive subspace, a maximal negative
/// subspace, and the kernel of a real symmetric bilinear form.
struct Signature {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t r = 0;

  std::size_t dimension() const noexcept { return p + q + r; }
  Signature negated() const noexcept { return {q, p, r}; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.p) + "," + std::to_string(s.q) + "," + std::to_string(s.r) + ")";
}

/// Symmetric n x n matrix over a real cyclotomic field. All entries are lifted
/// to a common conductor on construction.
class SymMatrix {
public:
  SymMatrix() = default;

  explicit SymMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  explicit SymMatrix(const std::vector<std::vector<CycloNumber>>& rows) : n_(rows.size()), entries_() {
    entries_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw ValidationError("symmetric matrix rows must all have length " + std::to_string(n_));
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!(at(i, j) == at(j, i)))
          throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    unify_conductor();
  }

  static SymMatrix from_rationals(const std::vector<std::vector<Rational>>& rows) {
    std::vector<std::vector<CycloNumber>> c(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& v : rows[i]) c[i].emplace_back(v);
    return SymMatrix(c);
  }

  std::size_t size() const noexcept { return n_; }
  const CycloNumber& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const CycloNumber& v) {
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = v;
  }

  std::uint32_t conductor() const noexcept {
    return entries_.empty() ? 2u : entries_.front().conductor();
  }

  void unify_conductor() {
    std::uint32_t L = 2;
    for (const auto& e : entries_) L = std::lcm(L, e.conductor());
    for (auto& e : entries_) e = e.lifted(L);
  }

  SymMatrix negated() const {
    SymMatrix m = *this;
    for (auto& e : m.entries_) e = -e;
    return m;
  }

  /// A^T M A for a square rational A of matching size.
  SymMatrix congruent(const std::vector<std::vector<Rational>>& a) const {
    if (a.size() != n_) throw ValidationError("congruence matrix has wrong size");
    SymMatrix out(n_);
    std::vector<CycloNumber> ma(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        CycloNumber acc(Rational(0), conductor());
        for (std::size_t k = 0; k < n_; ++k)
          if (a[k][j] != 0) acc += at(i, k) * a[k][j];
        ma[i * n_ + j] = acc;
      }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        CycloNumber acc(Rational(0), conductor());
        for (std::size_t k = 0; k < n_; ++k)
          if (a[k][i] != 0) acc += ma[k * n_ + j] * a[k][i];
        out.set(i, j, acc);
      }
    return out;
  }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

private:
  std::size_t n_ = 0;
  std::vector<CycloNumber> entries_;
};

/// Signature by symmetric congruence elimination, without division.
///
/// Eliminating a nonzero pivot a at (i,i) replaces the trailing block S by
/// a*S - s_i s_i^T, which is a times the true Schur complement; a hyperbolic
/// 2x2 pivot [[0,b],[b,0]] likewise yields b times its Schur complement and
/// contributes one (+1,-1) pair. The running `orientation` records the sign
/// of those scalings so no field inverses are ever formed.
inline Signature signature(const SymMatrix& m, unsigned budget_bits = kDefaultPrecisionBudget) {
  Signature sig;
  std::vector<std::size_t> active(m.size());
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<CycloNumber> s(m.size() * m.size());
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i * n + j] = m.at(i, j);
  auto S = [&](std::size_t i, std::size_t j) -> CycloNumber& { return s[i * n + j]; };
  Sign orientation = Sign::Positive;

  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return !S(i, i).is_zero(); });
    if (diag != active.end()) {
      const std::size_t i = *diag;
      const CycloNumber a = S(i, i);
      const Sign sa = sign(a, budget_bits);
      (sa * orientation == Sign::Positive ? sig.p : sig.q) += 1;
      active.erase(diag);
      for (std::size_t x = 0; x < active.size(); ++x)
        for (std::size_t y = x; y < active.size(); ++y) {
          const std::size_t j = active[x], k = active[y];
          CycloNumber v = a * S(j, k) - S(j, i) * S(i, k);
          S(j, k) = v;
          S(k, j) = std::move(v);
        }
      orientation = orientation * sa;
      continue;
    }
    std::size_t pi = n, pj = n;
    for (std::size_t x = 0; x < active.size() && pi == n; ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y)
        if (!S(active[x], active[y]).is_zero()) {
          pi = active[x];
          pj = active[y];
          break;
        }
    if (pi == n) {
      sig.r += active.size();
      break;
    }
    const CycloNumber b = S(pi, pj);
    const Sign sb = sign(b, budget_bits);
    sig.p += 1;
    sig.q += 1;
    std::erase(active, pi);
    std::erase(active, pj);
    for (std::size_t x = 0; x < active.size(); ++x)
      for (std::size_t y = x; y < active.size(); ++y) {
        const std::size_t k = active[x], l = active[y];
        CycloNumber v = b * S(k, l) - (S(k, pi) * S(l, pj) + S(k, pj) * S(l, pi));
        S(k, l) = v;
        S(l, k) = std::move(v);
      }
    orientation = orientation * sb;
  }
  return sig;
}

/// p + q of the signature.
inline std::size_t rank(const SymMatrix& m, unsigned budget_bits = kDefaultPrecisionBudget) {
  const Signature s = signature(m, budget_bits);
  return s.p + s.q;
}

}  // namespace coxdec::exact
