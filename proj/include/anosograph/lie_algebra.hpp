#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anosograph/exact.hpp"
#include "anosograph/graph.hpp"
#include "anosograph/json_io.hpp"
#include "anosograph/lyndon.hpp"

namespace anosograph {

struct BasisElement {
  std::size_t degree = 1;
  Word word;          // surviving Lyndon word
  std::string label;  // bracket notation, e.g. "[a,[a,b]]"
};

/// Finite-dimensional graded Lie algebra generated in degree 1, with exact
/// rational structure constants. Basis elements are grouped by degree.
class GradedLieAlgebra {
 public:
  struct Parts {
    std::size_t step = 0;
    std::vector<std::string> generators;
    std::vector<BasisElement> basis;  // sorted by degree
    std::vector<SparseVector> brackets;  // dim*dim table, [e_i, e_j] at i*dim + j
    std::vector<std::optional<std::pair<SparseVector, SparseVector>>> factors;
    std::vector<std::size_t> ideal_dims;
  };

  GradedLieAlgebra() = default;
  explicit GradedLieAlgebra(Parts parts);

  std::size_t step() const noexcept { return step_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  /// dims()[m - 1] is the dimension of the degree-m component.
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t degree) const { return dims_.at(degree - 1); }
  /// First global index of the degree-m component.
  std::size_t offset(std::size_t degree) const { return offsets_.at(degree - 1); }
  std::size_t degree_of(std::size_t i) const { return basis_.at(i).degree; }
  const BasisElement& element(std::size_t i) const { return basis_.at(i); }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<std::size_t>& ideal_dims() const noexcept { return ideal_dims_; }

  const SparseVector& bracket(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }
  SparseVector bracket(const SparseVector& x, const SparseVector& y) const;
  RatVector bracket(const RatVector& x, const RatVector& y) const;

  /// For a basis element of degree >= 2: vectors (x, y) with [x, y] = e_i.
  const std::optional<std::pair<SparseVector, SparseVector>>& factors(std::size_t i) const {
    return factors_.at(i);
  }

  /// Locates a basis element by its label, if present.
  std::optional<std::size_t> find(const std::string& label) const;

  Json to_json() const;

 private:
  std::size_t step_ = 0;
  std::vector<std::string> generators_;
  std::vector<BasisElement> basis_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<SparseVector> table_;
  std::vector<std::optional<std::pair<SparseVector, SparseVector>>> factors_;
  std::vector<std::size_t> ideal_dims_;
};

/// H_k: the free k-step nilpotent algebra on the vertices modulo the ideal
/// generated by brackets of non-adjacent vertices.
GradedLieAlgebra quotient_algebra(const Graph& g, std::size_t k);

/// Quotient of A by a subspace of its top-degree component (central, hence an
/// ideal). `projection` maps A-coordinates onto the quotient basis; `lift`
/// sends each quotient basis index to the A basis index it came from.
struct TopQuotient {
  GradedLieAlgebra algebra;
  RatMatrix projection;
  std::vector<std::size_t> lift;
};
TopQuotient quotient_top_degree(const GradedLieAlgebra& a, const std::vector<SparseVector>& kill);

/// Bilinear bracket of two coordinate vectors; throws DimensionMismatch.
RatVector bracket_eval(const GradedLieAlgebra& a, const RatVector& x, const RatVector& y);

/// First basis triple violating the Jacobi identity, if any.
std::optional<std::array<std::size_t, 3>> find_jacobi_violation(const GradedLieAlgebra& a);

/// Bracket label of a Lyndon word under standard factorization.
std::string bracket_label(const Word& w, const std::vector<std::string>& alphabet);

}  // namespace anosograph
