#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anosograph/exact.hpp"
#include "anosograph/json_io.hpp"

namespace anosograph {

/// Dense univariate polynomial over Z, ascending coefficients, no trailing zeros.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> ascending);
  IntPolynomial(std::initializer_list<long> ascending);

  static IntPolynomial monomial(std::size_t degree, const Integer& coeff = 1);
  static IntPolynomial x_minus(const Integer& root);

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Integer>& coefficients() const noexcept { return c_; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const Integer& leading() const { return c_.back(); }

  Integer content() const;
  IntPolynomial primitive() const;  // content removed, positive leading coefficient
  IntPolynomial derivative() const;
  /// x^deg * p(1/x)
  IntPolynomial reversed() const;

  Integer evaluate(const Integer& x) const;
  Rational evaluate(const Rational& x) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Integer& s, const IntPolynomial& a);
  IntPolynomial operator-() const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "x") const;
  Json to_json() const;
  static IntPolynomial from_json(const Json& j);

 private:
  void trim();
  std::vector<Integer> c_;
};

/// Exact quotient a / b when b divides a over Z; nullopt otherwise.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& a, const IntPolynomial& b);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// Primitive gcd over Q (positive leading coefficient); gcd(0, 0) = 0.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Product of the distinct irreducible factors (primitive).
IntPolynomial squarefree_part(const IntPolynomial& p);

std::size_t euler_phi(std::size_t n);
/// d-th cyclotomic polynomial.
IntPolynomial cyclotomic(std::size_t d);

}  // namespace anosograph
