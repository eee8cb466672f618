#pragma once

// Exact linear algebra over Q: dense matrices, row reduction, null spaces,
// subspaces in reduced echelon form, and a sparse incremental eliminator for
// large homogeneous systems.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coxdec/errors.hpp"

namespace coxdec::lie {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

inline std::string to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ValidationError("matrix row has the wrong length");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    return from_rows(cols, rows).transposed();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  /// Row-major flattening.
  const std::vector<Rational>& flat() const noexcept { return a_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec apply(const Vec& v) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw ValidationError("matrix product dimension mismatch");
    Matrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rational& a = x(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (y(k, j) != 0) z(i, j) += a * y(k, j);
      }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(Matrix x, const Rational& s) {
    for (auto& v : x.a_) v *= s;
    return x;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// In-place reduction to reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vec> nullspace(Matrix m) {
  const auto pivots = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ValidationError("inverse of a non-square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// A subspace of Q^n held as the rows of its reduced row echelon basis, so
/// equal subspaces have identical representations.
class Subspace {
public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(const std::vector<Vec>& vectors, std::size_t ambient) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Matrix m = Matrix::from_rows(vectors, ambient);
    s.pivots_ = rref(m);
    for (std::size_t r = 0; r < s.pivots_.size(); ++r) s.basis_.push_back(m.row(r));
    return s;
  }
  static Subspace whole(std::size_t ambient) {
    std::vector<Vec> e(ambient, Vec(ambient));
    for (std::size_t i = 0; i < ambient; ++i) e[i][i] = 1;
    return span(e, ambient);
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

  /// Coordinates of v in the echelon basis, or empty if v is not in the span.
  std::optional<Vec> coordinates(const Vec& v) const {
    Vec c(dim());
    Vec rest = v;
    for (std::size_t r = 0; r < dim(); ++r) {
      c[r] = rest[pivots_[r]];
      if (c[r] == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (basis_[r][j] != 0) rest[j] -= c[r] * basis_[r][j];
    }
    if (!is_zero(rest)) return std::nullopt;
    return c;
  }
  bool contains(const Vec& v) const { return coordinates(v).has_value(); }
  bool contains(const Subspace& s) const {
    return std::all_of(s.basis_.begin(), s.basis_.end(), [&](const Vec& v) { return contains(v); });
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    std::vector<Vec> all = a.basis_;
    all.insert(all.end(), b.basis_.begin(), b.basis_.end());
    return span(all, a.ambient_);
  }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

private:
  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace intersection(const Subspace& a, const Subspace& b) {
  // Solve sum x_i a_i = sum y_j b_j.
  const std::size_t n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  Matrix m(n, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < n; ++k) m(k, i) = a.basis()[i][k];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, a.dim() + j) = -b.basis()[j][k];
  std::vector<Vec> out;
  for (const auto& sol : nullspace(m)) {
    Vec v(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (sol[i] != 0)
        for (std::size_t k = 0; k < n; ++k) v[k] += sol[i] * a.basis()[i][k];
    out.push_back(std::move(v));
  }
  return Subspace::span(out, n);
}

/// Incremental Gaussian elimination for sparse homogeneous systems with many
/// more equations than rank. Rows are kept in echelon form keyed by pivot.
class SparseEliminator {
public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseEliminator(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t rank() const noexcept { return rows_.size(); }

  /// Adds one equation; returns true if it was independent of the previous ones.
  bool add(Row row) {
    for (auto it = row.begin(); it != row.end();) {
      if (it->second == 0) {
        it = row.erase(it);
        continue;
      }
      auto p = rows_.find(it->first);
      if (p == rows_.end()) {
        ++it;
        continue;
      }
      const Rational f = it->second;  // pivot rows are normalized to leading 1
      const std::size_t col = it->first;
      for (const auto& [c, v] : p->second) row[c] -= f * v;
      it = row.upper_bound(col);
      row.erase(col);
    }
    if (row.empty()) return false;
    const Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    rows_.emplace(row.begin()->first, std::move(row));
    return true;
  }

  /// Basis of the solution space, one vector per free unknown.
  std::vector<Vec> solutions() const {
    // Back-substitute from the last pivot to obtain reduced rows.
    std::map<std::size_t, Row> reduced;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      Row row = it->second;
      for (auto e = std::next(row.begin()); e != row.end();) {
        auto r = reduced.find(e->first);
        if (r == reduced.end() || e->second == 0) {
          ++e;
          continue;
        }
        const Rational f = e->second;
        const std::size_t col = e->first;
        for (const auto& [c, v] : r->second) row[c] -= f * v;
        e = row.upper_bound(col);
        row.erase(col);
      }
      reduced.emplace(it->first, std::move(row));
    }
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < unknowns_; ++f) {
      if (reduced.count(f)) continue;
      Vec v(unknowns_);
      v[f] = 1;
      for (const auto& [p, row] : reduced) {
        auto e = row.find(f);
        if (e != row.end()) v[p] = -e->second;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

private:
  std::size_t unknowns_;
  std::map<std::size_t, Row> rows_;
};

/// Random invertible matrix with small integer entries.
inline Matrix random_invertible(std::size_t n, std::mt19937_64& rng, int spread = 2) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  while (true) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    if (rank(m) == n) return m;
  }
}

}  // namespace coxdec::lie
