#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "coxdec/errors.hpp"

namespace coxdec {

/// Entry m_st of a Coxeter matrix: a positive integer or infinity.
class Label {
public:
  constexpr Label() = default;
  constexpr explicit Label(std::uint32_t m) : m_(m) {
    if (m == 0) throw ValidationError("Coxeter label must be a positive integer or inf");
  }

  static constexpr Label infinity() {
    Label l;
    l.m_ = 0;
    return l;
  }

  constexpr bool is_infinite() const noexcept { return m_ == 0; }
  constexpr bool is_finite() const noexcept { return m_ != 0; }

  /// Finite value; throws on infinity.
  constexpr std::uint32_t value() const {
    if (m_ == 0) throw ValidationError("infinite label has no integer value");
    return m_;
  }

  /// True for labels that produce an edge in the Coxeter graph (m >= 3 or inf).
  constexpr bool is_edge() const noexcept { return m_ == 0 || m_ >= 3; }

  std::string to_string() const { return m_ == 0 ? std::string("inf") : std::to_string(m_); }

  /// Accepts a decimal positive integer or "inf". Returns false on anything else.
  static bool try_parse(std::string_view token, Label& out) {
    if (token == "inf" || token == "∞") {
      out = infinity();
      return true;
    }
    if (token.empty() || token.size() > 9) return false;
    std::uint32_t v = 0;
    for (char c : token) {
      if (c < '0' || c > '9') return false;
      v = v * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (v == 0) return false;
    out = Label(v);
    return true;
  }

  friend constexpr bool operator==(Label a, Label b) noexcept { return a.m_ == b.m_; }

  /// Orders finite labels numerically and infinity above all of them.
  friend constexpr std::strong_ordering operator<=>(Label a, Label b) noexcept {
    if (a.m_ == b.m_) return std::strong_ordering::equal;
    if (a.m_ == 0) return std::strong_ordering::greater;
    if (b.m_ == 0) return std::strong_ordering::less;
    return a.m_ <=> b.m_;
  }

private:
  std::uint32_t m_ = 1;
};

}  // namespace coxdec
