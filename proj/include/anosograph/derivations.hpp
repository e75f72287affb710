#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anosograph/exact.hpp"
#include "anosograph/graph.hpp"
#include "anosograph/json_io.hpp"
#include "anosograph/kernels/affine_filter.hpp"
#include "anosograph/lie_algebra.hpp"
#include "anosograph/polynomial.hpp"

namespace anosograph {

// ---------------------------------------------------------------------------
// Quotient specifications

/// coefficient * [l0, l1] for step 2, coefficient * [l0, [l1, l2]] for step 3.
struct BracketTerm {
  std::vector<std::string> labels;
  Rational coefficient{1};
};

struct QuotientSpec {
  std::size_t step = 2;
  std::vector<BracketTerm> terms;  // X = sum of terms

  /// {"step": 2|3, "X": [{"bracket": [...], "coefficient": "p/q"}, ...]}
  static QuotientSpec from_json(const Json& j);
  Json to_json() const;
};

/// Vertex indices playing the roles in X = [alpha, beta] + [gamma, delta].
struct QuadrupleRoles {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::size_t gamma = 0;
  std::size_t delta = 0;
};

/// Validates a step-2 spec: two unit-coefficient terms on four distinct
/// vertices with alpha beta, gamma delta, alpha gamma, alpha delta all edges.
/// Either term may come first, and both may be reversed together (which
/// negates X and keeps the line it spans). Throws SpecError.
QuadrupleRoles quadruple_roles(const Graph& g, const QuotientSpec& spec);

/// X in coordinates of H_step(g). Throws SpecError on an invalid spec.
SparseVector quotient_vector(const GradedLieAlgebra& h, const Graph& g, const QuotientSpec& spec);

/// H_step(g) / <X>.
GradedLieAlgebra build_quotient(const Graph& g, const QuotientSpec& spec);

// ---------------------------------------------------------------------------
// Derivations

struct DerivationAlgebra {
  std::size_t ambient_dim = 0;
  bool stabilizes_v = false;
  std::vector<RatMatrix> basis;  // ambient_dim x ambient_dim, reduced echelon in D|V

  std::size_t dimension() const noexcept { return basis.size(); }
  Json to_json() const;
};

/// Solves D[x, y] = [Dx, y] + [x, Dy]. With `stabilize_v`, only D with D(V) in V.
DerivationAlgebra derivation_algebra(const GradedLieAlgebra& a, bool stabilize_v = false);

/// First basis pair on which `d` fails the derivation identity.
std::optional<std::pair<std::size_t, std::size_t>> find_derivation_violation(const GradedLieAlgebra& a,
                                                                             const RatMatrix& d);

/// ad_x as a matrix on the basis of `a`.
RatMatrix inner_derivation(const GradedLieAlgebra& a, const SparseVector& x);

/// The derivation of `a` extending a degree-preserving map on V, when one exists.
std::optional<RatMatrix> extend_derivation(const GradedLieAlgebra& a, const RatMatrix& on_v);

// ---------------------------------------------------------------------------
// Reports on the step-2 quotient

struct FamilyReport {
  std::string name;
  std::size_t dimension = 0;
  std::vector<RatMatrix> members;  // n x n, basis of the family's part of the algebra
};

struct SpanReport {
  std::vector<std::string> vertices;
  QuadrupleRoles roles;
  std::size_t algebra_dim = 0;  // restrictions D|V of V-stabilizing derivations
  std::size_t span_dim = 0;
  std::vector<FamilyReport> families;
  bool families_inside = true;   // every family member is a derivation restriction
  bool algebra_inside = true;    // every derivation restriction is in the span
  bool membership_agrees = true; // single E's: direct test equals membership in the solved space
  std::optional<RatMatrix> witness;

  bool holds() const noexcept { return families_inside && algebra_inside && membership_agrees; }
  Json to_json() const;
};

SpanReport span_report(const Graph& g, const QuotientSpec& spec);

struct LiftReport {
  std::size_t image_dim = 0;   // restrictions of D in Der(N), D(V) in V, D<X> in <X>
  std::size_t target_dim = 0;  // restrictions of D in Der(N/<X>), D(V) in V
  bool image_inside = true;
  bool holds() const noexcept { return image_inside && image_dim == target_dim; }
  Json to_json() const;
};

LiftReport lift_check(const Graph& g, const QuotientSpec& spec);

// ---------------------------------------------------------------------------
// Bounded search for hyperbolic automorphisms

struct SearchConfig {
  std::int32_t entry_bound = 2;
  std::size_t budget = 100000;  // candidate maps evaluated
  std::uint64_t seed = 0;
  unsigned budget_bits = 256;
  std::vector<IntMatrix> plants;  // evaluated first, outside the budget
  std::optional<kernels::Backend> backend;
};

struct SearchFinding {
  IntMatrix matrix;  // on V
  std::string phase;  // plant | ordered | random
  std::vector<IntPolynomial> char_polys;
  IntPolynomial char_poly;
  Json certificate;
  Json to_json() const;
};

struct SearchReport {
  std::int32_t entry_bound = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::string backend;
  std::size_t exhaustive_leaves = 0;   // full matrices reached by the ordered enumeration
  std::size_t random_descents = 0;
  std::size_t random_leaves = 0;
  std::size_t evaluated = 0;           // distinct full matrices checked
  std::size_t unimodular = 0;          // det = +-1
  std::size_t compatible = 0;          // unimodular and extending to the whole algebra
  std::size_t integral = 0;            // compatible with an integral char poly, unit constant term
  std::size_t top_degree_unit_root = 0;  // compatible with a modulus-1 eigenvalue in the top degree
  std::size_t indeterminate = 0;
  bool exhaustive = false;             // the whole box was enumerated
  std::vector<SearchFinding> findings;
  Json to_json() const;
};

SearchReport hyperbolic_search(const GradedLieAlgebra& a, const SearchConfig& config = {});

}  // namespace anosograph
