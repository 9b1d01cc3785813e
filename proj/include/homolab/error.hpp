#pragma once

#include <stdexcept>
#include <string>

namespace homolab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mismatched rings, dimensions, variable counts, inhomogeneous input.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Operation requires a nonzero module.
class ZeroModuleError : public Error {
public:
  using Error::Error;
};

/// Operation is not available for the given input (e.g. no canonical module).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// A cooperative deadline expired inside a long computation.
class TimeoutError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace homolab
