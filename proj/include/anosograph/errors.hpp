#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anosograph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `line` is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An internal invariant that should be unreachable was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Certified decision could not be reached within the refinement budget.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// A degree-1 map does not induce a well-defined map on the quotient algebra.
class DescentError : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class ComponentSearchExhausted : public Error {
 public:
  using Error::Error;
};

class ExponentLadderExhausted : public Error {
 public:
  using Error::Error;
};

/// Quotient specification rejected by validation.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace anosograph
