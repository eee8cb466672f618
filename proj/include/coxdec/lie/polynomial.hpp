#pragma once

// Dense univariate polynomials over Q, lowest degree first.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/lie/linalg.hpp"

namespace coxdec::lie {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline Poly operator*(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline Poly operator-(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// (quotient, remainder) of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, Poly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw ValidationError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational f = a[k + b.size() - 1] / b.back();
    q[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// (g, s, t) with s a + t b = g = gcd(a, b), g monic.
inline std::tuple<Poly, Poly, Poly> extended_gcd(Poly a, Poly b) {
  Poly s0{1}, s1{}, t0{}, t1{1};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Rational lead = a.back();
  for (auto* p : {&a, &s0, &t0})
    for (auto& c : *p) c /= lead;
  return {a, s0, t0};
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

inline Poly square_free_part(const Poly& p) {
  const Poly g = gcd(p, derivative(p));
  return monic(divmod(p, g).first);
}

inline Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

inline Matrix evaluate(const Poly& p, const Matrix& m) {
  Matrix acc(m.rows(), m.cols());
  const Matrix id = Matrix::identity(m.rows());
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * m + id * p[k];
  return acc;
}

/// Minimal polynomial of a square matrix (monic), from the first linear
/// dependency among I, m, m^2, ...
inline Poly minimal_polynomial(const Matrix& m) {
  std::vector<Vec> powers;
  Matrix power = Matrix::identity(m.rows());
  while (true) {
    powers.push_back(power.flat());
    const auto kernel = nullspace(Matrix::from_columns(powers, m.rows() * m.cols()));
    if (!kernel.empty()) return monic(kernel.front());
    power = power * m;
  }
}

inline constexpr unsigned long kRootSearchLimit = 1000000000000UL;

/// Rational roots of p, each once, found by the rational root theorem on the
/// square-free part. Candidates are enumerated only while the constant and
/// leading coefficients stay below kRootSearchLimit; otherwise returns nullopt.
inline std::optional<std::vector<Rational>> rational_roots(const Poly& p) {
  Poly f = square_free_part(p);
  std::vector<Rational> roots;
  if (f.empty()) return roots;
  if (f.front() == 0) {
    roots.push_back(0);
    f = divmod(f, Poly{0, 1}).first;
  }
  if (degree(f) < 1) return roots;
  mpz_class den_lcm = 1;
  for (const auto& c : f) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : f) z.push_back(mpz_class(c * den_lcm));
  const mpz_class a0 = abs(z.front()), an = abs(z.back());
  if (a0 > kRootSearchLimit || an > kRootSearchLimit) return std::nullopt;
  auto divisors = [](unsigned long n) {
    std::vector<unsigned long> d;
    for (unsigned long k = 1; k * k <= n; ++k)
      if (n % k == 0) {
        d.push_back(k);
        if (k * k != n) d.push_back(n / k);
      }
    return d;
  };
  for (auto num : divisors(a0.get_ui()))
    for (auto den : divisors(an.get_ui()))
      for (int sgn : {1, -1}) {
        Rational x(mpz_class(num) * sgn, mpz_class(den));
        x.canonicalize();
        if (evaluate(f, x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace coxdec::lie
