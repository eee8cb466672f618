#pragma once

// Centroid computation and direct-sum decomposition into ideals for
// centreless Lie algebras over Q.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/lie/algebra.hpp"
#include "coxdec/lie/linalg.hpp"
#include "coxdec/lie/polynomial.hpp"
#include "coxdec/lie/structure.hpp"

namespace coxdec::lie {

/// Basis vectors that generate l as a Lie algebra, chosen greedily.
inline std::vector<std::size_t> lie_generators(const LieAlgebra& l) {
  std::vector<std::size_t> gens;
  Subspace generated(l.dim());
  for (std::size_t i = 0; i < l.dim() && generated.dim() < l.dim(); ++i) {
    if (generated.contains(l.unit(i))) continue;
    gens.push_back(i);
    std::vector<Vec> seeds;
    for (auto g : gens) seeds.push_back(l.unit(g));
    generated = Subspace::span(seeds, l.dim());
    while (true) {
      Subspace next = generated + bracket(l, generated, generated);
      if (next == generated) break;
      generated = std::move(next);
    }
  }
  return gens;
}

/// Basis of the centroid {phi : phi [x,y] = [phi x, y]} as d x d matrices. It
/// is the commutant of ad(L), so commuting with ad of a generating set suffices.
inline std::vector<Matrix> centroid(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  SparseEliminator eq(d * d);
  auto var = [d](std::size_t a, std::size_t b) { return a * d + b; };
  for (auto g : lie_generators(l)) {
    const Matrix ad = l.ad_basis(g);
    // (phi ad - ad phi)(a, b) = 0
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        SparseEliminator::Row row;
        for (std::size_t c = 0; c < d; ++c) {
          if (ad(c, b) != 0) row[var(a, c)] += ad(c, b);
          if (ad(a, c) != 0) row[var(c, b)] -= ad(a, c);
        }
        eq.add(std::move(row));
      }
  }
  std::vector<Matrix> basis;
  for (const auto& sol : eq.solutions()) {
    Matrix m(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m(a, b) = sol[var(a, b)];
    basis.push_back(std::move(m));
  }
  return basis;
}

/// Minimal polynomial of phi split at a rational root: f = (x - lambda)^a g.
struct RootSplit {
  Poly minimal;
  std::optional<std::vector<Rational>> roots;  ///< empty when the root search gave up
};

inline RootSplit root_split(const Matrix& phi) {
  RootSplit r{minimal_polynomial(phi), {}};
  r.roots = rational_roots(r.minimal);
  return r;
}

/// A nontrivial idempotent polynomial in phi, when the minimal polynomial of
/// phi has a rational root and another coprime factor.
inline std::optional<Matrix> idempotent_from(const Matrix& phi, const RootSplit& split) {
  if (!split.roots) return std::nullopt;
  for (const auto& lambda : *split.roots) {
    Poly u{1};
    Poly g = split.minimal;
    const Poly linear{-lambda, 1};
    while (true) {
      auto [q, r] = divmod(g, linear);
      if (!r.empty()) break;
      g = std::move(q);
      u = u * linear;
    }
    if (degree(g) < 1) continue;
    auto [one, s, t] = extended_gcd(u, g);
    if (degree(one) != 0) throw InternalError("coprime factors of a minimal polynomial have a common factor");
    return evaluate(t * g, phi);
  }
  return std::nullopt;
}

inline std::optional<Matrix> idempotent_from(const Matrix& phi) { return idempotent_from(phi, root_split(phi)); }

/// Why a summand has no nontrivial centroid idempotent. An ideal splitting
/// always yields one (the projection), so each reason certifies
/// indecomposability.
enum class Certificate {
  None,
  ScalarCentroid,  ///< centroid is one-dimensional
  LocalCentroid,   ///< commutative centroid whose elements are scalar plus nilpotent
  FieldCentroid,   ///< centroid = Q[phi] with phi's minimal polynomial irreducible (degree <= 3, no rational root)
};

inline std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::None: return "none";
    case Certificate::ScalarCentroid: return "scalar-centroid";
    case Certificate::LocalCentroid: return "local-centroid";
    case Certificate::FieldCentroid: return "field-centroid";
  }
  return "?";
}

enum class Verdict { Split, CertifiedIndecomposable, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Split: return "Split";
    case Verdict::CertifiedIndecomposable: return "CertifiedIndecomposable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct IdealSummand {
  Subspace ideal;  ///< in the coordinates of the input algebra
  std::size_t centroid_dim = 0;
  Certificate certificate = Certificate::None;

  bool certified() const { return certificate != Certificate::None; }
};

struct IdealDecomposition {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t centroid_dim = 0;
  std::vector<IdealSummand> summands;

  std::vector<std::size_t> dimensions() const {
    std::vector<std::size_t> d;
    for (const auto& s : summands) d.push_back(s.ideal.dim());
    std::sort(d.begin(), d.end());
    return d;
  }
};

namespace detail {

inline Subspace image(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace::span(cols, m.rows());
}

inline bool commutative(const std::vector<Matrix>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!(basis[i] * basis[j] == basis[j] * basis[i])) return false;
  return true;
}

// Certificate for a centroid without usable idempotents among `candidates`.
inline Certificate certify(const std::vector<Matrix>& basis, const std::vector<RootSplit>& splits) {
  if (basis.size() == 1) return Certificate::ScalarCentroid;
  if (!commutative(basis)) return Certificate::None;
  auto single_root = [](const RootSplit& s) {
    return s.roots && s.roots->size() == 1 && degree(square_free_part(s.minimal)) == 1;
  };
  if (std::all_of(splits.begin(), splits.begin() + static_cast<std::ptrdiff_t>(basis.size()), single_root))
    return Certificate::LocalCentroid;
  for (const auto& s : splits) {
    const int deg = degree(s.minimal);
    if (static_cast<std::size_t>(deg) == basis.size() && deg <= 3 && s.roots && s.roots->empty())
      return Certificate::FieldCentroid;
  }
  return Certificate::None;
}

// `embed` maps local coordinates of l into the input algebra's coordinates.
inline void split_recursively(const LieAlgebra& l, const Matrix& embed, std::mt19937_64& rng,
                              std::vector<IdealSummand>& out) {
  const auto basis = centroid(l);
  const std::size_t d = l.dim();
  auto leaf = [&](Certificate c) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(embed.column(j));
    out.push_back({Subspace::span(cols, embed.rows()), basis.size(), c});
  };
  if (basis.size() == 1) return leaf(Certificate::ScalarCentroid);
  if (basis.empty()) return leaf(Certificate::None);

  // Basis elements first, then random combinations.
  std::vector<Matrix> candidates = basis;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 4; ++k) {
    Matrix m(d, d);
    for (const auto& b : basis) m = m + b * Rational(coef(rng));
    candidates.push_back(std::move(m));
  }
  std::vector<RootSplit> splits;
  for (const auto& phi : candidates) {
    splits.push_back(root_split(phi));
    const auto e = idempotent_from(phi, splits.back());
    if (!e) continue;
    const Matrix id = Matrix::identity(d);
    if (!(*e * *e == *e)) throw InternalError("centroid idempotent is not idempotent");
    for (const Matrix& proj : {*e, id - *e}) {
      const Subspace part = image(proj);
      const Matrix part_embed = embed * Matrix::from_columns(part.basis(), d);
      split_recursively(subalgebra(l, part.basis()), part_embed, rng, out);
    }
    return;
  }
  leaf(certify(basis, splits));
}

}  // namespace detail

/// Splits a centreless Lie algebra into ideals using idempotents of its
/// centroid, and checks every split exactly.
inline IdealDecomposition decompose_ideals(const LieAlgebra& l, std::uint64_t seed = 0x5eed) {
  if (center(l).dim() != 0) throw ValidationError("decompose_ideals requires a centreless algebra");
  IdealDecomposition result;
  if (l.dim() == 0) {
    result.verdict = Verdict::CertifiedIndecomposable;
    return result;
  }
  result.centroid_dim = centroid(l).size();
  std::mt19937_64 rng(seed);
  detail::split_recursively(l, Matrix::identity(l.dim()), rng, result.summands);

  if (result.summands.size() > 1) {
    result.verdict = Verdict::Split;
    Subspace total(l.dim());
    std::size_t dims = 0;
    for (std::size_t i = 0; i < result.summands.size(); ++i) {
      const auto& a = result.summands[i].ideal;
      if (!is_ideal(l, a)) throw InternalError("split summand is not an ideal");
      for (std::size_t j = i + 1; j < result.summands.size(); ++j)
        if (bracket(l, a, result.summands[j].ideal).dim() != 0)
          throw InternalError("split summands do not commute");
      total = total + a;
      dims += a.dim();
    }
    if (total.dim() != l.dim() || dims != l.dim()) throw InternalError("split summands do not span a direct sum");
  } else {
    result.verdict = result.summands.front().certified() ? Verdict::CertifiedIndecomposable : Verdict::Inconclusive;
  }
  return result;
}

}  // namespace coxdec::lie
