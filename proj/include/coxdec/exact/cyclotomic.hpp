#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_L) and certified sign
// determination for their real elements.
//
// A value is a polynomial in zeta_L of degree < phi(L) with rational
// coefficients, reduced modulo the L-th cyclotomic polynomial. Reduced
// residues are canonical, so equality is coefficient equality once both
// operands live in the same field.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "coxdec/errors.hpp"
#include "coxdec/label.hpp"

namespace coxdec::exact {

using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBudget = 16384;

inline std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

// Exact division of `num` by the monic polynomial `den`; both low degree first.
inline std::vector<mpz_class> divide_monic(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {};
  std::vector<mpz_class> quot(num.size() - dn);
  for (std::size_t k = num.size(); k-- > dn;) {
    const mpz_class c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw InternalError("cyclotomic division left a remainder");
  }
  return quot;
}

inline const std::vector<mpz_class>& cyclotomic_integer(std::uint32_t n) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::vector<mpz_class>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<mpz_class> poly(n + 1);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(std::move(poly), cyclotomic_integer(d));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(poly)).first->second;
}

inline std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

// Owning wrapper around an mpfr_t.
class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

private:
  mpfr_t v_;
};

}  // namespace detail

/// Coefficients of the L-th cyclotomic polynomial, low degree first.
inline std::vector<mpz_class> cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) throw ValidationError("cyclotomic polynomial index must be positive");
  return detail::cyclotomic_integer(n);
}

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline int to_int(Sign s) noexcept { return static_cast<int>(s); }

inline Sign operator*(Sign a, Sign b) noexcept { return static_cast<Sign>(to_int(a) * to_int(b)); }

/// Decimal rendering of a real cyclotomic value with a certified bound on
/// its absolute error.
struct Preview {
  std::string decimal;
  std::string error_bound;
};

class CycloNumber {
public:
  /// Zero of Q = Q(zeta_2).
  CycloNumber() : conductor_(2), coeffs_(1) {}

  explicit CycloNumber(const Rational& r, std::uint32_t conductor = 2) : conductor_(conductor) {
    check_conductor(conductor);
    coeffs_.assign(euler_phi(conductor), Rational(0));
    coeffs_[0] = r;
    coeffs_[0].canonicalize();
  }

  CycloNumber(long r) : CycloNumber(Rational(r)) {}  // NOLINT: implicit from integers is convenient

  /// zeta_L^k for any integer k.
  static CycloNumber zeta_power(std::uint32_t conductor, std::int64_t k) {
    check_conductor(conductor);
    const auto L = static_cast<std::int64_t>(conductor);
    const auto e = static_cast<std::size_t>(((k % L) + L) % L);
    std::vector<Rational> poly(e + 1);
    poly[e] = 1;
    return CycloNumber(conductor, std::move(poly));
  }

  /// Builds a value from an arbitrary-length polynomial in zeta_L.
  static CycloNumber from_polynomial(std::uint32_t conductor, std::vector<Rational> poly) {
    check_conductor(conductor);
    return CycloNumber(conductor, std::move(poly));
  }

  std::uint32_t conductor() const noexcept { return conductor_; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// Embeds the value in Q(zeta_target); target must be a multiple of the conductor.
  CycloNumber lifted(std::uint32_t target) const {
    if (target == conductor_) return *this;
    if (target % conductor_ != 0)
      throw ConductorMismatch("cannot lift conductor " + std::to_string(conductor_) + " to " +
                              std::to_string(target));
    check_conductor(target);
    const std::size_t step = target / conductor_;
    std::vector<Rational> poly((coeffs_.size() - 1) * step + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[k * step] = coeffs_[k];
    return CycloNumber(target, std::move(poly));
  }

  /// Image under zeta -> zeta^{-1} (complex conjugation in the standard embedding).
  CycloNumber conjugate() const {
    std::vector<Rational> poly(conductor_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[(conductor_ - k) % conductor_] += coeffs_[k];
    return CycloNumber(conductor_, std::move(poly));
  }

  bool is_real() const { return conjugate() == *this; }

  CycloNumber operator-() const {
    CycloNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ != b.conductor_) return unify(a, b, [](auto& x, auto& y) { return x + y; });
    CycloNumber r = a;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] += b.coeffs_[k];
    return r;
  }

  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ != b.conductor_) return unify(a, b, [](auto& x, auto& y) { return x - y; });
    CycloNumber r = a;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] -= b.coeffs_[k];
    return r;
  }

  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ != b.conductor_) return unify(a, b, [](auto& x, auto& y) { return x * y; });
    const std::size_t d = a.coeffs_.size();
    std::vector<Rational> poly(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.coeffs_[j] == 0) continue;
        poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return CycloNumber(a.conductor_, std::move(poly));
  }

  friend CycloNumber operator*(const CycloNumber& a, Rational s) {
    s.canonicalize();
    CycloNumber r = a;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }
  friend CycloNumber operator*(const Rational& s, const CycloNumber& a) { return a * s; }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const std::uint32_t L = std::lcm(a.conductor_, b.conductor_);
    return a.lifted(L).coeffs_ == b.lifted(L).coeffs_;
  }

  std::size_t hash() const {
    std::size_t h = conductor_;
    for (const auto& c : coeffs_) {
      h = h * 1000003u ^ detail::hash_mpz(c.get_num());
      h = h * 1000003u ^ detail::hash_mpz(c.get_den());
    }
    return h;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      if (!out.empty()) out += " + ";
      out += coeffs_[k].get_str();
      if (k > 0) out += "*z" + std::to_string(conductor_) + "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }

private:
  CycloNumber(std::uint32_t conductor, std::vector<Rational> poly) : conductor_(conductor) {
    const auto& phi = detail::cyclotomic_integer(conductor);
    const std::size_t d = phi.size() - 1;
    // GMP arithmetic assumes canonical operands; callers may pass e.g. 4/2.
    for (auto& c : poly) c.canonicalize();
    for (std::size_t k = poly.size(); k-- > d;) {
      if (poly[k] == 0) continue;
      const Rational c = poly[k];
      for (std::size_t i = 0; i < d; ++i) {
        if (phi[i] != 0) poly[k - d + i] -= c * phi[i];
      }
      poly[k] = 0;
    }
    poly.resize(d);
    coeffs_ = std::move(poly);
  }

  static void check_conductor(std::uint32_t conductor) {
    if (conductor == 0 || conductor % 2 != 0)
      throw ConductorMismatch("conductor must be a positive even integer, got " + std::to_string(conductor));
  }

  template <class Op>
  static CycloNumber unify(const CycloNumber& a, const CycloNumber& b, Op op) {
    const std::uint32_t L = std::lcm(a.conductor_, b.conductor_);
    const CycloNumber x = a.lifted(L);
    const CycloNumber y = b.lifted(L);
    return op(x, y);
  }

  std::uint32_t conductor_;
  std::vector<Rational> coeffs_;
};

struct CycloHash {
  std::size_t operator()(const CycloNumber& x) const { return x.hash(); }
};

/// cos(pi/m) as an element of Q(zeta_conductor). For m = inf the value is 1,
/// so that the Tits-form entry -cos(pi/m) becomes -1.
inline CycloNumber cos_pi_over(Label m, std::uint32_t conductor) {
  if (m.is_infinite()) return CycloNumber(Rational(1), conductor);
  const std::uint32_t twice = 2 * m.value();
  if (conductor == 0 || conductor % twice != 0)
    throw ConductorMismatch("conductor " + std::to_string(conductor) + " is not a multiple of 2m = " +
                            std::to_string(twice));
  const std::int64_t k = conductor / twice;
  return (CycloNumber::zeta_power(conductor, k) + CycloNumber::zeta_power(conductor, -k)) * Rational(1, 2);
}

namespace detail {

// Real part of x under zeta -> exp(2 pi i / L) evaluated at `prec` bits, and a
// rigorous upper bound on the absolute error of that evaluation.
inline void evaluate_real(const CycloNumber& x, mpfr_prec_t prec, Mpfr& value, Mpfr& error) {
  const auto coeffs = x.coeffs();
  const std::uint32_t L = x.conductor();
  Mpfr angle(prec + 16), term(prec), c(prec), abs_sum(64);
  mpfr_set_zero(value.get(), 1);
  mpfr_set_zero(abs_sum.get(), 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_ui(angle.get(), angle.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), L, MPFR_RNDN);
    mpfr_cos(term.get(), angle.get(), MPFR_RNDN);
    mpfr_set_q(c.get(), coeffs[k].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), c.get(), MPFR_RNDN);
    mpfr_add(value.get(), value.get(), term.get(), MPFR_RNDN);
    const Rational a = abs(coeffs[k]);
    mpfr_set_q(c.get(), a.get_mpq_t(), MPFR_RNDU);
    mpfr_add(abs_sum.get(), abs_sum.get(), c.get(), MPFR_RNDU);
  }
  // Every term is off by at most (|c_k| + 1) * 2^(8 - prec) and the running
  // sum loses at most one ulp per addition.
  mpfr_add_ui(abs_sum.get(), abs_sum.get(), 1, MPFR_RNDU);
  mpfr_mul_ui(error.get(), abs_sum.get(), static_cast<unsigned long>(coeffs.size() + 2), MPFR_RNDU);
  mpfr_mul_2si(error.get(), error.get(), 8 - static_cast<long>(prec), MPFR_RNDU);
}

}  // namespace detail

/// Exact sign of a real cyclotomic value. Zero is decided symbolically; a
/// nonzero value is evaluated with doubling precision until the certified
/// interval excludes zero.
inline Sign sign(const CycloNumber& x, unsigned budget_bits = kDefaultPrecisionBudget) {
  if (x.is_zero()) return Sign::Zero;
  if (x.conductor() <= 2) return x.coeffs()[0] > 0 ? Sign::Positive : Sign::Negative;
  if (!x.is_real()) throw ValidationError("sign requested for a non-real cyclotomic value");
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    if (prec > static_cast<mpfr_prec_t>(budget_bits)) prec = budget_bits;
    detail::Mpfr value(prec), error(64), mag(prec);
    detail::evaluate_real(x, prec, value, error);
    mpfr_abs(mag.get(), value.get(), MPFR_RNDN);
    if (mpfr_cmp(mag.get(), error.get()) > 0) return mpfr_sgn(value.get()) > 0 ? Sign::Positive : Sign::Negative;
    if (prec >= static_cast<mpfr_prec_t>(budget_bits))
      throw BudgetExceeded("sign undecided within " + std::to_string(budget_bits) + " bits", budget_bits);
  }
}

/// Double approximation of the real part (testing and display only).
inline double approx(const CycloNumber& x) {
  detail::Mpfr value(80), error(64);
  detail::evaluate_real(x, 80, value, error);
  return mpfr_get_d(value.get(), MPFR_RNDN);
}

/// Decimal string with `digits` significant digits plus its certified error.
inline Preview preview(const CycloNumber& x, int digits = 20) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
  detail::Mpfr value(prec), error(64);
  detail::evaluate_real(x, prec, value, error);
  // Rounding the decimal output adds at most half a unit in the last digit.
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value.get());
  Preview p;
  p.decimal = buf.data();
  mpfr_snprintf(buf.data(), buf.size(), "%.2Re", error.get());
  p.error_bound = buf.data();
  if (!mpfr_zero_p(value.get())) {
    detail::Mpfr rounding(64);
    mpfr_abs(rounding.get(), value.get(), MPFR_RNDU);
    mpfr_mul_2si(rounding.get(), rounding.get(), 4 - static_cast<long>(digits) * 3, MPFR_RNDU);
    mpfr_add(error.get(), error.get(), rounding.get(), MPFR_RNDU);
    mpfr_snprintf(buf.data(), buf.size(), "%.2Re", error.get());
    p.error_bound = buf.data();
  }
  return p;
}

}  // namespace coxdec::exact
