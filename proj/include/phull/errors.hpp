#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phull {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or precondition violation (letter outside alphabet, ℓ = 0, non-primitive input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured size budget (word count, period length) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to converge or produced an inconsistent result.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace phull
