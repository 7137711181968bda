#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scj {

// Base class for every domain error raised by the library. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Line and column are 1-based; column 0 means the whole
// line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A size guard on an exhaustive routine was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace scj
