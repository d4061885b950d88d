#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcanon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degree (or rank) mismatch, or a point outside 1..n.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` and `column` are 1-based; line is 0 for
/// single-line inputs such as a cycle string or an expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    std::string where = line == 0
                            ? "column " + std::to_string(column)
                            : "line " + std::to_string(line) + ", column " +
                                  std::to_string(column);
    return where + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A free index label occurs more than once in a configuration.
class FreeIndexViolation : public Error {
 public:
  using Error::Error;
};

/// An enumeration would produce more elements than the caller allowed.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Operation is undefined for a group containing (-1, id).
class ZeroTensorError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcanon
