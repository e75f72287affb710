#include "anosograph/exact.hpp"

#include <algorithm>

namespace anosograph {

IntMatrix matrix_power(const IntMatrix& a, unsigned exponent) {
  if (!a.square()) throw DimensionMismatch("matrix_power: matrix is not square");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

Integer determinant(const IntMatrix& a) {
  if (!a.square()) throw DimensionMismatch("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(t);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

std::optional<IntMatrix> to_integer(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).get_den() != 1) return std::nullopt;
      out(i, j) = a(i, j).get_num();
    }
  return out;
}

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a == 0 || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto yi = y.begin();
  auto xi = x.begin();
  while (yi != y.end() || xi != x.end()) {
    if (xi == x.end() || (yi != y.end() && yi->first < xi->first)) {
      out.push_back(std::move(*yi));
      ++yi;
    } else if (yi == y.end() || xi->first < yi->first) {
      out.emplace_back(xi->first, a * xi->second);
      ++xi;
    } else {
      Rational s = yi->second + a * xi->second;
      if (s != 0) out.emplace_back(yi->first, std::move(s));
      ++yi;
      ++xi;
    }
  }
  y = std::move(out);
}

SparseVector to_sparse(std::span<const Rational> dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) out.emplace_back(i, dense[i]);
  return out;
}

RatVector to_dense(const SparseVector& v, std::size_t dim) {
  RatVector out(dim);
  for (const auto& [i, x] : v) {
    if (i >= dim) throw DimensionMismatch("to_dense: index out of range");
    out[i] = x;
  }
  return out;
}

namespace {

const Rational* find_entry(const SparseVector& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  return (it != v.end() && it->first == index) ? &it->second : nullptr;
}

}  // namespace

SparseVector Subspace::reduce(SparseVector v) const {
  // Rows are fully reduced, so each pivot column is touched by exactly one row
  // and elimination order does not matter.
  for (std::size_t r = 0; r < rows_.size() && !v.empty(); ++r) {
    if (const Rational* c = find_entry(v, pivots_[r])) {
      Rational coeff = -*c;
      axpy(v, coeff, rows_[r]);
    }
  }
  return v;
}

bool Subspace::add(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::size_t pivot = v.front().first;
  const Rational lead = v.front().second;
  for (auto& [i, x] : v) x /= lead;
  for (auto& row : rows_) {
    if (const Rational* c = find_entry(row, pivot)) {
      Rational coeff = -*c;
      axpy(row, coeff, v);
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto offset = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + offset, std::move(v));
  return true;
}

std::vector<SparseVector> Subspace::rows() const { return rows_; }
std::vector<std::size_t> Subspace::pivots() const { return pivots_; }

bool Subspace::is_pivot(std::size_t col) const {
  return std::binary_search(pivots_.begin(), pivots_.end(), col);
}

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
  Subspace rowspace(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) rowspace.add(a.row(r));
  const auto pivots = rowspace.pivots();
  const auto rows = rowspace.rows();
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (rowspace.is_pivot(free)) continue;
    RatVector v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (const Rational* c = find_entry(rows[r], free)) v[pivots[r]] = -*c;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RatMatrix& a) {
  Subspace rowspace(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) rowspace.add(a.row(r));
  return rowspace.dim();
}

void RelationFinder::push(SparseVector v) {
  SparseVector combo{{count_++, Rational(1)}};
  for (const auto& row : rows_) {
    if (v.empty()) break;
    if (v.front().first > row.pivot) continue;
    if (const Rational* c = find_entry(v, row.pivot)) {
      Rational coeff = -*c / row.value.front().second;
      axpy(v, coeff, row.value);
      axpy(combo, coeff, row.combo);
    }
  }
  if (v.empty()) {
    relations_.push_back(std::move(combo));
    return;
  }
  const std::size_t pivot = v.front().first;
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                              [](const Row& r, std::size_t p) { return r.pivot < p; });
  rows_.insert(pos, Row{pivot, std::move(v), std::move(combo)});
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace anosograph
