#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "anosograph/exact.hpp"
#include "anosograph/json_io.hpp"
#include "anosograph/polynomial.hpp"

namespace anosograph {

/// det(xI - A), computed division-free.
IntPolynomial char_poly(const IntMatrix& a);

/// Characteristic polynomial of a rational matrix when all its coefficients
/// are integers; nullopt otherwise.
std::optional<IntPolynomial> integral_char_poly(const RatMatrix& a);

/// Primitive integer multiple of the characteristic polynomial of a rational matrix.
IntPolynomial primitive_char_poly(const RatMatrix& a);

/// r-th compound: r x r minors indexed by r-subsets in colex order.
IntMatrix compound_matrix(const IntMatrix& a, std::size_t r);

/// r-subsets of {0..n-1} in colex order.
std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t r);

enum class UnitRootVerdict { free, not_free };
enum class UnitRootMethod { gcd_trivial, cyclotomic_factor, isolated_interval };

std::string to_string(UnitRootVerdict v);
std::string to_string(UnitRootMethod m);

/// Closed disk |z - c|^2 <= radius_sq holding exactly one root. `margin` is an
/// exact lower bound on | |z| - 1 | over the disk.
struct RootEnclosure {
  Rational re;
  Rational im;
  Rational radius_sq;
  bool outside = false;  // disk lies outside the unit circle
  Rational margin;
};

/// Isolating interval (lo, hi) of a root t of the trace polynomial q with
/// |t| < 2; t = z + 1/z for a unit-modulus root z.
struct TraceWitness {
  IntPolynomial trace_poly;
  Rational lo;
  Rational hi;
};

struct UnitRootCertificate {
  UnitRootVerdict verdict = UnitRootVerdict::free;
  UnitRootMethod method = UnitRootMethod::gcd_trivial;
  IntPolynomial polynomial;
  IntPolynomial reciprocal_gcd;  // gcd(p, reversed p)
  std::optional<std::size_t> cyclotomic_index;
  std::vector<RootEnclosure> enclosures;  // roots of the squarefree part of the gcd
  std::optional<TraceWitness> trace_witness;
  unsigned precision_bits = 0;

  bool is_free() const noexcept { return verdict == UnitRootVerdict::free; }
  Json to_json() const;
};

/// Interval-refinement budget in bits: ANOSOGRAPH_BUDGET_BITS if set, else 256.
unsigned default_budget_bits();

/// Certified decision whether p has a root of modulus exactly 1.
/// Throws Error when p is zero or p(0) = 0, and Indeterminate when the
/// enclosures cannot be made decisive within `budget_bits`.
UnitRootCertificate unit_root_free(const IntPolynomial& p, unsigned budget_bits = default_budget_bits());

struct ProductsReport {
  bool off_circle = true;
  std::size_t r_max = 0;
  std::vector<IntPolynomial> char_polys;          // one per r checked
  std::vector<UnitRootCertificate> certificates;  // stops at the first failure
  Json to_json() const;
};

/// True iff no r-fold eigenvalue product (r <= r_max) has modulus 1.
ProductsReport products_off_circle(const IntMatrix& a, std::size_t r_max,
                                   unsigned budget_bits = default_budget_bits());

// ---------------------------------------------------------------------------
// Root enclosures.

/// Certified disjoint disks, one per root of a squarefree polynomial, each
/// decisively inside or outside the unit circle. nullopt when no precision
/// up to `budget_bits` yields such a set.
std::optional<std::vector<RootEnclosure>> enclose_roots(const IntPolynomial& squarefree, unsigned budget_bits,
                                                        unsigned* used_bits = nullptr);

/// Number of distinct real roots of a squarefree p in the open interval (lo, hi),
/// neither endpoint being a root.
std::size_t sturm_count(const IntPolynomial& p, const Rational& lo, const Rational& hi);

/// For a self-reciprocal p of even degree 2m: q with p(x) = x^m q(x + 1/x).
IntPolynomial trace_polynomial(const IntPolynomial& p);

}  // namespace anosograph
