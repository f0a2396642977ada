#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace difformal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a 0-based column.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("syntax error at column " + std::to_string(position + 1) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input outside the supported language (unknown names, bad exponents).
class UnsupportedError : public Error {
 public:
  UnsupportedError(std::size_t position, const std::string& message)
      : Error("unsupported at column " + std::to_string(position + 1) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EmptyPolynomial : public Error {
 public:
  EmptyPolynomial() : Error("operation requires a nonzero polynomial") {}
};

class UnresolvedParameter : public Error {
 public:
  explicit UnresolvedParameter(const std::string& name)
      : Error("parameter " + name + " has no numeric value") {}
};

/// A configured size guard tripped (pair queue, degree, coefficient size).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace difformal
