#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plreach {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or dimensionally inconsistent input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A text document that failed to parse. Line and column are 1-based; zero
/// means the position is unknown (e.g. a schema violation located by path).
class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t line = 0,
              std::size_t column = 0)
      : InputError(what), line_(line), column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An activation the exact engine cannot decide (anything that is not
/// piecewise linear with rational data), or a constraint kind a reduction
/// cannot translate.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A numeric sample outside the domain of the identity being checked.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace plreach
