#pragma once

// Finite Coxeter groups enumerated in the geometric representation
// s(v) = v - 2 B(e_s, v) e_s over Q(zeta_L).

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/system.hpp"
#include "coxdec/errors.hpp"
#include "coxdec/group/cayley.hpp"

namespace coxdec::coxeter {

inline constexpr std::size_t kDefaultClosureBudget = 2000000;

/// Dense square matrix over a cyclotomic field, row-major.
struct CycloMatrix {
  std::size_t n = 0;
  std::vector<CycloNumber> entries;

  static CycloMatrix identity(std::size_t n, std::uint32_t conductor) {
    CycloMatrix m{n, std::vector<CycloNumber>(n * n, CycloNumber(Rational(0), conductor))};
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycloNumber(Rational(1), conductor);
    return m;
  }
  CycloNumber& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const CycloNumber& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  CycloMatrix transposed() const {
    CycloMatrix t = *this;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t.at(i, j) = at(j, i);
    return t;
  }

  friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
    CycloMatrix c = a;
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) {
        CycloNumber acc = a.at(i, 0) * b.at(0, j);
        for (std::size_t k = 1; k < a.n; ++k) acc += a.at(i, k) * b.at(k, j);
        c.at(i, j) = std::move(acc);
      }
    return c;
  }
  friend bool operator==(const CycloMatrix&, const CycloMatrix&) = default;
};

inline CycloMatrix to_matrix(const SymMatrix& s) {
  CycloMatrix m{s.size(), {}};
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m.entries.push_back(s.at(i, j));
  return m;
}

/// Matrix of the reflection in e_s for the form b.
inline CycloMatrix reflection_matrix(const SymMatrix& b, std::size_t s) {
  CycloMatrix m = CycloMatrix::identity(b.size(), b.conductor());
  for (std::size_t j = 0; j < b.size(); ++j) m.at(s, j) = m.at(s, j) - b.at(s, j) * Rational(2);
  return m;
}

/// An enumerated finite reflection group. Elements are numbered in
/// breadth-first discovery order from the identity (index 0) using generators
/// in index order; element i > 0 equals element parent[i] times generator
/// generator_of[i].
class ReflectionGroup {
public:
  std::size_t rank() const noexcept { return rank_; }
  std::uint32_t conductor() const noexcept { return conductor_; }
  std::size_t order() const noexcept { return parent_.size(); }
  const std::vector<CycloMatrix>& generators() const noexcept { return generators_; }
  const SymMatrix& form() const noexcept { return form_; }

  /// Index of element i times generator s.
  group::Element right_multiple(std::size_t i, std::size_t s) const { return right_[i * rank_ + s]; }

  /// Exact matrix of element i.
  CycloMatrix element(std::size_t i) const {
    CycloMatrix m{rank_, {}};
    const std::size_t d = exact::euler_phi(conductor_);
    for (std::size_t e = 0; e < rank_ * rank_; ++e) {
      std::vector<Rational> poly(d);
      for (std::size_t k = 0; k < d; ++k) poly[k] = Rational(elements_[i][e * d + k]);
      m.entries.push_back(CycloNumber::from_polynomial(conductor_, std::move(poly)));
    }
    return m;
  }

  /// Multiplication table in element order; bit-reproducible for a given
  /// system. Throws BudgetExceeded above `bound`.
  group::CayleyGroup to_cayley(std::size_t bound = group::kDefaultOrderBound) const {
    if (order() > bound)
      throw BudgetExceeded("group of order " + std::to_string(order()) + " exceeds Cayley export bound", order());
    return group::CayleyGroup(group::TrustedTable{}, order(),
                              group::table_from_enumeration(order(), rank_, right_, parent_, generator_of_));
  }

private:
  friend ReflectionGroup build_group(const CoxeterSystem&, std::size_t);

  std::size_t rank_ = 0;
  std::uint32_t conductor_ = 2;
  SymMatrix form_;
  std::vector<CycloMatrix> generators_;
  std::vector<std::vector<std::int64_t>> elements_;  // integer coefficient vectors, entry-major
  std::vector<group::Element> right_;
  std::vector<group::Element> parent_;
  std::vector<std::uint32_t> generator_of_;
};

namespace detail {

struct IntVecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace detail

/// Enumerates W by breadth-first closure over exact matrices. Every component
/// must classify as finite. Generator entries 2cos(pi/m) = zeta^k + zeta^-k
/// are algebraic integers, so all element matrices have integer coordinates
/// in the power basis and are stored as machine integers.
inline ReflectionGroup build_group(const CoxeterSystem& cs, std::size_t budget = kDefaultClosureBudget) {
  for (const auto& c : components(cs))
    if (classify(c.system).kind != Kind::Finite)
      throw ValidationError("build_group requires a finite Coxeter group; component is infinite");

  ReflectionGroup w;
  const std::size_t n = cs.rank();
  w.rank_ = n;
  w.form_ = tits_form(cs);
  w.conductor_ = w.form_.conductor();
  const std::uint32_t L = w.conductor_;
  const CycloMatrix bm = to_matrix(w.form_);
  const CycloMatrix id = CycloMatrix::identity(n, L);
  for (std::size_t s = 0; s < n; ++s) {
    CycloMatrix g = reflection_matrix(w.form_, s);
    if (!(g * g == id)) throw InternalError("reflection " + std::to_string(s) + " does not square to the identity");
    if (!(g.transposed() * bm * g == bm)) throw InternalError("reflection " + std::to_string(s) + " does not preserve B");
    w.generators_.push_back(std::move(g));
  }

  const auto& phi_z = exact::detail::cyclotomic_integer(L);
  const std::size_t d = phi_z.size() - 1;
  std::vector<std::int64_t> phi(d + 1);
  for (std::size_t k = 0; k <= d; ++k) phi[k] = phi_z[k].get_si();

  auto to_int = [&](const CycloNumber& x) {
    std::vector<std::int64_t> v(d);
    const CycloNumber lifted = x.lifted(L);
    const auto c = lifted.coeffs();
    for (std::size_t k = 0; k < d; ++k) {
      if (c[k].get_den() != 1) throw InternalError("reflection entry is not an algebraic integer");
      v[k] = c[k].get_num().get_si();
    }
    return v;
  };
  // delta[s][j] = -2 B(e_s, e_j) as an integer coefficient vector.
  std::vector<std::vector<std::vector<std::int64_t>>> delta(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t j = 0; j < n; ++j) delta[s].push_back(to_int(w.form_.at(s, j) * Rational(-2)));

  std::vector<std::int64_t> scratch(2 * d);
  auto mul_add = [&](std::int64_t* out, const std::int64_t* a, const std::vector<std::int64_t>& b) {
    std::fill(scratch.begin(), scratch.end(), 0);
    bool any = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (b[j] != 0) {
          scratch[i + j] += a[i] * b[j];
          any = true;
        }
    }
    if (!any) return;
    for (std::size_t k = 2 * d - 1; k-- > d;) {
      const std::int64_t c = scratch[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i < d; ++i) scratch[k - d + i] -= c * phi[i];
    }
    for (std::size_t k = 0; k < d; ++k) out[k] += scratch[k];
  };

  std::vector<std::int64_t> identity(n * n * d, 0);
  for (std::size_t i = 0; i < n; ++i) identity[(i * n + i) * d] = 1;
  std::unordered_map<std::vector<std::int64_t>, group::Element, detail::IntVecHash> index;
  index.emplace(identity, 0);
  w.elements_.push_back(identity);
  w.parent_.push_back(0);
  w.generator_of_.push_back(0);
  for (std::size_t e = 0; e < w.elements_.size(); ++e) {
    for (std::size_t s = 0; s < n; ++s) {
      // (g * sigma_s)_{ij} = g_ij - 2 g_is B_sj
      std::vector<std::int64_t> next = w.elements_[e];
      const auto& g = w.elements_[e];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (s == j || !w.form_.at(s, j).is_zero()) mul_add(&next[(i * n + j) * d], &g[(i * n + s) * d], delta[s][j]);
      auto [it, fresh] = index.emplace(next, static_cast<group::Element>(w.elements_.size()));
      if (fresh) {
        if (w.elements_.size() >= budget)
          throw BudgetExceeded("group closure exceeded " + std::to_string(budget) + " elements", w.elements_.size());
        w.elements_.push_back(std::move(next));
        w.parent_.push_back(static_cast<group::Element>(e));
        w.generator_of_.push_back(static_cast<std::uint32_t>(s));
      }
      w.right_.push_back(it->second);
    }
  }
  return w;
}

}  // namespace coxdec::coxeter
