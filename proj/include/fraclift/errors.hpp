#pragma once

#include <stdexcept>
#include <string>

namespace fraclift {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Gamma evaluated at a nonpositive integer, or a Gamma ratio whose
// numerator sits on a pole while the denominator does not.
class PoleError : public Error {
public:
  using Error::Error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

// Argument outside the domain of an operation (evaluation point, exponent
// class, precondition of R^-1, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Exponents that do not share a single lattice {phi + n : n in Z}.
class LatticeError : public Error {
public:
  using Error::Error;
};

class BasepointMismatch : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  using Error::Error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

} // namespace fraclift
