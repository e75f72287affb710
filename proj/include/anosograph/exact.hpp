#pragma once

// Exact integer/rational linear algebra shared by every module.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anosograph/errors.hpp"

namespace anosograph {

using Integer = mpz_class;
using Rational = mpq_class;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = std::vector<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (a(i, l) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
    }
  return out;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: dimensions differ");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) out[i] += a(i, j) * x[j];
  return out;
}

IntMatrix matrix_power(const IntMatrix& a, unsigned exponent);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& a);

RatMatrix to_rational(const IntMatrix& a);
std::optional<IntMatrix> to_integer(const RatMatrix& a);

// ---------------------------------------------------------------------------
// Sparse vectors: sorted (index, value) pairs with nonzero values.

using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// y += a * x
void axpy(SparseVector& y, const Rational& a, const SparseVector& x);
SparseVector to_sparse(std::span<const Rational> dense);
RatVector to_dense(const SparseVector& v, std::size_t dim);

/// Row space over Q kept in reduced row echelon form. Pivots are leading
/// entries, so the smallest column index of each row is its pivot.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  /// Returns true when `v` was independent of the current rows.
  bool add(SparseVector v);
  bool add(std::span<const Rational> v) { return add(to_sparse(v)); }

  /// Remainder of `v` after eliminating every pivot column.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// Rows sorted by pivot column.
  std::vector<SparseVector> rows() const;
  std::vector<std::size_t> pivots() const;
  bool is_pivot(std::size_t col) const;

 private:
  std::size_t dim_;
  // Parallel arrays ordered by pivot.
  std::vector<std::size_t> pivots_;
  std::vector<SparseVector> rows_;
};

/// Right null space basis of `a` (each basis vector has length a.cols()).
std::vector<RatVector> kernel_basis(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);

/// Finds all linear relations among a stream of sparse vectors: after every
/// vector has been pushed, `relations()` spans { c : sum_p c_p v_p = 0 }.
class RelationFinder {
 public:
  void push(SparseVector v);
  const std::vector<SparseVector>& relations() const noexcept { return relations_; }
  std::size_t count() const noexcept { return count_; }

 private:
  struct Row {
    std::size_t pivot;
    SparseVector value;
    SparseVector combo;
  };
  std::vector<Row> rows_;  // sorted by pivot
  std::vector<SparseVector> relations_;
  std::size_t count_ = 0;
};

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

}  // namespace anosograph
