#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "anosograph/exact.hpp"

namespace anosograph {

/// Word over the generator alphabet {0, ..., n-1}.
using Word = std::vector<std::uint32_t>;

bool is_lyndon(const Word& w);

/// w = u v with v the longest proper Lyndon suffix. Requires |w| >= 2.
std::pair<Word, Word> standard_factorization(const Word& w);

/// (1/m) * sum_{d | m} mu(d) n^(m/d)
Integer witt_number(std::size_t n, std::size_t m);

struct LyndonBasis {
  std::size_t generators = 0;
  std::size_t step = 0;
  std::vector<std::vector<Word>> words;  // words[m - 1]: degree-m words in lexicographic order

  std::vector<std::size_t> dims() const;
};

LyndonBasis lyndon_basis(std::size_t n, std::size_t k);

/// Free k-step nilpotent Lie algebra on n generators in the Lyndon basis.
/// Elements of degree m are integer coordinate vectors over words[m - 1].
class FreeLieAlgebra {
 public:
  FreeLieAlgebra(std::size_t n, std::size_t k);

  const LyndonBasis& basis() const noexcept { return basis_; }
  std::size_t generators() const noexcept { return basis_.generators; }
  std::size_t step() const noexcept { return basis_.step; }
  std::size_t dim(std::size_t degree) const { return basis_.words.at(degree - 1).size(); }

  /// Position of a Lyndon word inside its degree.
  std::size_t index_of(const Word& w) const;

  /// [P_u, P_v] expressed in the degree |u|+|v| Lyndon basis; requires |u|+|v| <= k.
  SparseVector bracket(const Word& u, const Word& v) const;

 private:
  using Poly = std::map<std::uint64_t, Integer>;  // word code -> coefficient, single degree

  std::uint64_t code(const Word& w) const;
  const Poly& expansion(const Word& w) const;
  Poly multiply(const Poly& a, std::size_t len_a, const Poly& b, std::size_t len_b) const;
  SparseVector to_lyndon(Poly p, std::size_t degree) const;

  LyndonBasis basis_;
  std::vector<std::map<std::uint64_t, std::size_t>> index_;  // per degree: code -> position
  mutable std::map<Word, Poly> expansions_;
  std::vector<std::uint64_t> powers_;
};

}  // namespace anosograph
