#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftype {

/// Malformed presentation or word text. Line and column are 1-based; line 0
/// means the input was a single word rather than a file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& message, std::size_t line, std::size_t column)
      : std::runtime_error(where(line, column) + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string where(std::size_t line, std::size_t column) {
    if (line == 0) {
      return "column " + std::to_string(column) + ": ";
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column)
           + ": ";
  }

  std::size_t line_;
  std::size_t column_;
};

/// A numeric construction ran out of retries or produced an unusable draw.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ftype
