#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxdec {

/// Base of every error raised by the library. `exit_code()` is the value the
/// command-line tool returns when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Malformed input: bad file contents, broken invariants on construction,
/// preconditions that the caller violated.
class ValidationError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Arithmetic across cyclotomic fields whose conductors are incompatible with
/// the request (e.g. cos(pi/m) asked for in a field not containing it).
class ConductorMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// A size, precision or element-count budget ran out. `partial()` carries a
/// progress figure where the operation has one (kernels found, elements seen).
class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& what, std::size_t partial = 0)
      : Error(what), partial_(partial) {}
  int exit_code() const noexcept override { return 3; }
  std::size_t partial() const noexcept { return partial_; }

private:
  std::size_t partial_;
};

/// Two independent computations disagreed. Never expected; always a bug in
/// one of the two routes.
class InternalError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace coxdec
