#pragma once

// Finite-dimensional Lie algebras over Q given by structure constants.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/lie/linalg.hpp"

namespace coxdec::lie {

/// [x_i, x_j] = sum_k c(i,j,k) x_k. Antisymmetry and the Jacobi identity are
/// verified exactly on construction.
class LieAlgebra {
public:
  LieAlgebra() = default;

  /// `constants` has dim^3 entries indexed (i*dim + j)*dim + k.
  LieAlgebra(std::size_t dim, std::vector<Rational> constants) : dim_(dim), c_(std::move(constants)) {
    if (c_.size() != dim_ * dim_ * dim_) throw ValidationError("structure constant array has the wrong size");
    index_nonzero();
    validate();
  }

  static LieAlgebra abelian(std::size_t dim) { return LieAlgebra(dim, std::vector<Rational>(dim * dim * dim)); }

  std::size_t dim() const noexcept { return dim_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<Rational>& constants() const noexcept { return c_; }

  /// Nonzero (k, c(i,j,k)) of the bracket of two basis vectors.
  const std::vector<std::pair<std::size_t, Rational>>& basis_bracket(std::size_t i, std::size_t j) const {
    return nonzero_[i * dim_ + j];
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        const Rational f = x[i] * y[j];
        for (const auto& [k, v] : basis_bracket(i, j)) out[k] += f * v;
      }
    }
    return out;
  }

  /// Matrix of ad x in the basis: column j is [x, x_j].
  Matrix ad(const Vec& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (const auto& [k, v] : basis_bracket(i, j)) m(k, j) += x[i] * v;
    }
    return m;
  }
  Matrix ad_basis(std::size_t i) const { return ad(unit(i)); }

  Vec unit(std::size_t i) const {
    Vec e(dim_);
    e[i] = 1;
    return e;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

private:
  void index_nonzero() {
    nonzero_.assign(dim_ * dim_, {});
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != 0) nonzero_[i * dim_ + j].emplace_back(k, c(i, j, k));
  }

  void validate() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != -c(j, i, k))
            throw ValidationError("antisymmetry fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
    // [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0
    Vec sum(dim_);
    auto add_nested = [&](std::size_t a, std::size_t b, std::size_t e) {
      for (const auto& [m, v] : basis_bracket(a, b))
        for (const auto& [l, w] : basis_bracket(m, e)) sum[l] += v * w;
    };
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = j + 1; k < dim_; ++k) {
          std::fill(sum.begin(), sum.end(), 0);
          add_nested(i, j, k);
          add_nested(j, k, i);
          add_nested(k, i, j);
          if (!is_zero(sum))
            throw ValidationError("Jacobi identity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
        }
  }

  std::size_t dim_ = 0;
  std::vector<Rational> c_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> nonzero_;
};

/// The Lie algebra spanned by square matrices under the commutator. Throws
/// ValidationError if the matrices are dependent or not closed.
inline LieAlgebra from_matrix_basis(const std::vector<Matrix>& basis) {
  const std::size_t d = basis.size();
  if (d == 0) return LieAlgebra::abelian(0);
  const std::size_t n = basis.front().rows();
  std::vector<Vec> flat;
  for (const auto& m : basis) {
    if (m.rows() != n || m.cols() != n) throw ValidationError("matrix basis elements must be square of equal size");
    flat.push_back(m.flat());
  }
  // Pick d coordinates on which the basis is independent, then solve there.
  Matrix rows = Matrix::from_rows(flat, n * n);
  Matrix reduced = rows;
  const auto pivots = rref(reduced);
  if (pivots.size() != d) throw ValidationError("matrix basis is linearly dependent");
  Matrix restricted(d, d);  // restricted(r, i) = basis_i at coordinate pivots[r]
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < d; ++i) restricted(r, i) = flat[i][pivots[r]];
  const Matrix solver = *inverse(restricted);

  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Matrix br = basis[i] * basis[j] - basis[j] * basis[i];
      Vec target(d);
      for (std::size_t r = 0; r < d; ++r) target[r] = br.flat()[pivots[r]];
      const Vec coords = solver.apply(target);
      Matrix check(n, n);
      for (std::size_t k = 0; k < d; ++k)
        if (coords[k] != 0) check = check + basis[k] * coords[k];
      if (!(check == br))
        throw ValidationError("matrix span is not closed under the commutator at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      for (std::size_t k = 0; k < d; ++k) {
        c[(i * d + j) * d + k] = coords[k];
        c[(j * d + i) * d + k] = -coords[k];
      }
    }
  return LieAlgebra(d, std::move(c));
}

struct OfSignature {
  std::size_t p = 0, q = 0, r = 0;
};

/// Matrix basis of the algebra of B-skew endomorphisms of Q^(p+q+r) that kill
/// the radical, for B = diag(1^p, (-1)^q, 0^r): the so(p,q) block followed by
/// r translation rows.
inline std::vector<Matrix> of_matrix_basis(const OfSignature& sig) {
  const std::size_t m = sig.p + sig.q, n = m + sig.r;
  if (n == 0) throw ValidationError("of(p,q,r) needs p+q+r >= 1");
  auto j = [&](std::size_t i) { return i < sig.p ? 1 : -1; };
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Matrix x(n, n);
      x(a, b) = j(b);
      x(b, a) = -j(a);
      out.push_back(std::move(x));
    }
  for (std::size_t t = 0; t < sig.r; ++t)
    for (std::size_t k = 0; k < m; ++k) {
      Matrix x(n, n);
      x(m + t, k) = 1;
      out.push_back(std::move(x));
    }
  return out;
}

inline LieAlgebra of_algebra(const OfSignature& sig) {
  const auto basis = of_matrix_basis(sig);
  if (basis.empty()) return LieAlgebra::abelian(0);
  return from_matrix_basis(basis);
}

inline std::size_t of_dimension(const OfSignature& sig) {
  const std::size_t m = sig.p + sig.q;
  return m * (m == 0 ? 0 : m - 1) / 2 + sig.r * m;
}

/// Restriction of the bracket to a subalgebra given by a basis.
inline LieAlgebra subalgebra(const LieAlgebra& l, const std::vector<Vec>& basis) {
  const std::size_t d = basis.size();
  const Subspace span = Subspace::span(basis, l.dim());
  if (span.dim() != d) throw ValidationError("subalgebra basis is linearly dependent");
  Matrix cols = Matrix::from_columns(basis, l.dim());
  // Coordinates relative to `basis`: solve cols * x = v via a left inverse.
  Matrix reduced = cols.transposed();
  const auto pivots = rref(reduced);
  Matrix restricted(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < d; ++i) restricted(r, i) = basis[i][pivots[r]];
  const Matrix solver = *inverse(restricted);
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec br = l.bracket(basis[i], basis[j]);
      Vec target(d);
      for (std::size_t r = 0; r < d; ++r) target[r] = br[pivots[r]];
      const Vec x = solver.apply(target);
      if (cols.apply(x) != br) throw ValidationError("subspace is not closed under the bracket");
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = x[k];
    }
  return LieAlgebra(d, std::move(c));
}

/// Structure constants in the basis y_i = sum_a change(a, i) x_a.
inline LieAlgebra change_basis(const LieAlgebra& l, const Matrix& change) {
  const std::size_t d = l.dim();
  const auto inv = inverse(change);
  if (!inv) throw ValidationError("change of basis is singular");
  std::vector<Vec> ys;
  for (std::size_t i = 0; i < d; ++i) ys.push_back(change.column(i));
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vec coords = inv->apply(l.bracket(ys[i], ys[j]));
      for (std::size_t k = 0; k < d; ++k) {
        c[(i * d + j) * d + k] = coords[k];
        c[(j * d + i) * d + k] = -coords[k];
      }
    }
  return LieAlgebra(d, std::move(c));
}

/// True iff the linear map (column j = image of basis vector j) preserves
/// brackets.
inline bool is_homomorphism(const LieAlgebra& from, const LieAlgebra& to, const Matrix& map) {
  if (map.cols() != from.dim() || map.rows() != to.dim()) return false;
  std::vector<Vec> images;
  for (std::size_t i = 0; i < from.dim(); ++i) images.push_back(map.column(i));
  for (std::size_t i = 0; i < from.dim(); ++i)
    for (std::size_t j = i + 1; j < from.dim(); ++j) {
      Vec lhs(to.dim());
      for (const auto& [k, v] : from.basis_bracket(i, j))
        for (std::size_t t = 0; t < to.dim(); ++t) lhs[t] += v * images[k][t];
      if (lhs != to.bracket(images[i], images[j])) return false;
    }
  return true;
}

inline bool is_isomorphism(const LieAlgebra& from, const LieAlgebra& to, const Matrix& map) {
  return from.dim() == to.dim() && rank(map) == from.dim() && is_homomorphism(from, to, map);
}

}  // namespace coxdec::lie
