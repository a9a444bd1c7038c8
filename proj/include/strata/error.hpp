#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strata {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when not line-oriented.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid data: self-loops, unknown nodes, coverage mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation produced nothing usable (e.g. a source scan found no units).
class EmptyResultError : public Error {
 public:
  using Error::Error;
};

}  // namespace strata
