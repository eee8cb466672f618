#pragma once

// Plain-text input formats.
//
// Coxeter matrix:  line 1 is the rank n, then n lines of n labels
//                  (positive integers or "inf").
// Cayley table:    line 1 is the order n, then n lines of n 0-based indices;
//                  index 0 must be the identity.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coxdec/coxeter/system.hpp"
#include "coxdec/errors.hpp"
#include "coxdec/group/cayley.hpp"
#include "coxdec/label.hpp"

namespace coxdec::io {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() && tokenize(lines.back()).empty()) lines.pop_back();
  return lines;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::size_t parse_count(const std::vector<std::string>& lines, const char* what) {
  if (lines.empty()) throw ParseError(std::string("empty input, expected the ") + what, 1, 1);
  const auto toks = tokenize(lines[0]);
  if (toks.empty()) throw ParseError(std::string("expected the ") + what + " on line 1", 1, 1);
  if (toks.size() > 1) throw ParseError("unexpected token after the " + std::string(what), 1, toks[1].column);
  std::size_t n = 0;
  for (char c : toks[0].text) {
    if (c < '0' || c > '9' || n > 100000)
      throw ParseError(std::string("invalid ") + what + " '" + std::string(toks[0].text) + "'", 1, toks[0].column);
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (lines.size() != n + 1)
    throw ParseError("expected " + std::to_string(n) + " rows after line 1, found " + std::to_string(lines.size() - 1),
                     lines.size() < n + 1 ? lines.size() + 1 : n + 2, 1);
  return n;
}

inline std::vector<Token> row_tokens(const std::vector<std::string>& lines, std::size_t row, std::size_t n) {
  auto toks = tokenize(lines[row + 1]);
  if (toks.size() < n)
    throw ParseError("row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n), row + 2,
                     lines[row + 1].size() + 1);
  if (toks.size() > n) throw ParseError("row has more than " + std::to_string(n) + " entries", row + 2, toks[n].column);
  return toks;
}

}  // namespace detail

inline coxeter::CoxeterSystem parse_coxeter_text(const std::string& text) {
  const auto lines = split_lines(text);
  const std::size_t n = detail::parse_count(lines, "rank");
  std::vector<std::vector<Label>> m(n, std::vector<Label>(n));
  std::vector<std::vector<std::size_t>> columns(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto toks = detail::row_tokens(lines, i, n);
    for (std::size_t j = 0; j < n; ++j) {
      columns[i][j] = toks[j].column;
      if (!Label::try_parse(toks[j].text, m[i][j]))
        throw ParseError("invalid label '" + std::string(toks[j].text) + "' (expected a positive integer or inf)",
                         i + 2, toks[j].column);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != Label(1)) throw ParseError("diagonal entry must be 1", i + 2, columns[i][i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (m[i][j] != m[j][i])
        throw ParseError("matrix is not symmetric: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") = " + m[i][j].to_string() + " but (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ") = " + m[j][i].to_string(),
                         i + 2, columns[i][j]);
      if (m[i][j] == Label(1)) throw ParseError("off-diagonal entry must be at least 2", i + 2, columns[i][j]);
    }
  }
  return coxeter::CoxeterSystem(std::move(m));
}

inline group::CayleyGroup parse_cayley_text(const std::string& text) {
  const auto lines = split_lines(text);
  const std::size_t n = detail::parse_count(lines, "order");
  if (n == 0) throw ParseError("group order must be positive", 1, 1);
  std::vector<group::Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto toks = detail::row_tokens(lines, i, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = 0;
      bool ok = !toks[j].text.empty();
      for (char c : toks[j].text) {
        if (c < '0' || c > '9' || v >= n) {
          ok = false;
          break;
        }
        v = v * 10 + static_cast<std::size_t>(c - '0');
      }
      if (!ok || v >= n)
        throw ParseError("invalid element index '" + std::string(toks[j].text) + "' (expected 0.." +
                             std::to_string(n - 1) + ")",
                         i + 2, toks[j].column);
      table[i * n + j] = static_cast<group::Element>(v);
    }
  }
  return group::CayleyGroup(n, std::move(table));
}

inline std::string to_text(const coxeter::CoxeterSystem& cs) {
  std::string out = std::to_string(cs.rank()) + "\n";
  for (std::size_t i = 0; i < cs.rank(); ++i) {
    for (std::size_t j = 0; j < cs.rank(); ++j) out += (j ? " " : "") + cs.label(i, j).to_string();
    out += "\n";
  }
  return out;
}

inline std::string to_text(const group::CayleyGroup& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (group::Element a = 0; a < g.order(); ++a) {
    for (group::Element b = 0; b < g.order(); ++b) out += (b ? " " : "") + std::to_string(g.mul(a, b));
    out += "\n";
  }
  return out;
}

}  // namespace coxdec::io
