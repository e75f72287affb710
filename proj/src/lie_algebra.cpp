#include "anosograph/lie_algebra.hpp"

#include <algorithm>
#include <map>

namespace anosograph {

std::string bracket_label(const Word& w, const std::vector<std::string>& alphabet) {
  if (w.size() == 1) return alphabet.at(w[0]);
  auto [u, v] = standard_factorization(w);
  return "[" + bracket_label(u, alphabet) + "," + bracket_label(v, alphabet) + "]";
}

GradedLieAlgebra::GradedLieAlgebra(Parts parts)
    : step_(parts.step),
      generators_(std::move(parts.generators)),
      basis_(std::move(parts.basis)),
      table_(std::move(parts.brackets)),
      factors_(std::move(parts.factors)),
      ideal_dims_(std::move(parts.ideal_dims)) {
  dims_.assign(step_, 0);
  offsets_.assign(step_, 0);
  std::size_t prev = 1;
  for (const auto& e : basis_) {
    if (e.degree < prev || e.degree > step_) throw InvariantViolation("basis not sorted by degree");
    prev = e.degree;
    ++dims_[e.degree - 1];
  }
  for (std::size_t m = 1; m < step_; ++m) offsets_[m] = offsets_[m - 1] + dims_[m - 1];
  if (table_.size() != basis_.size() * basis_.size()) throw InvariantViolation("bracket table has wrong size");
  if (factors_.size() != basis_.size()) throw InvariantViolation("factor table has wrong size");
  if (ideal_dims_.size() != step_) ideal_dims_.resize(step_, 0);
}

SparseVector GradedLieAlgebra::bracket(const SparseVector& x, const SparseVector& y) const {
  SparseVector out;
  for (const auto& [i, xi] : x)
    for (const auto& [j, yj] : y) {
      const auto& b = bracket(i, j);
      if (!b.empty()) axpy(out, xi * yj, b);
    }
  return out;
}

RatVector GradedLieAlgebra::bracket(const RatVector& x, const RatVector& y) const {
  return to_dense(bracket(to_sparse(x), to_sparse(y)), dim());
}

std::optional<std::size_t> GradedLieAlgebra::find(const std::string& label) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return i;
  return std::nullopt;
}

Json GradedLieAlgebra::to_json() const {
  Json out;
  out["k"] = step_;
  out["dims"] = dims_;
  out["ideal_dims"] = ideal_dims_;
  Json basis = Json::array();
  for (std::size_t m = 1; m <= step_; ++m) {
    Json words = Json::array();
    for (std::size_t i = offset(m); i < offset(m) + dim(m); ++i) words.push_back(basis_[i].label);
    basis.push_back(std::move(words));
  }
  out["basis"] = std::move(basis);
  Json structure = Json::array();
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      for (const auto& [l, c] : bracket(i, j))
        structure.push_back(Json::array({i, j, l, encode_integer(c.get_num()), encode_integer(c.get_den())}));
  out["structure"] = std::move(structure);
  return out;
}

RatVector bracket_eval(const GradedLieAlgebra& a, const RatVector& x, const RatVector& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw DimensionMismatch("bracket_eval: vector length " + std::to_string(x.size()) + "/" +
                            std::to_string(y.size()) + " does not match algebra dimension " +
                            std::to_string(a.dim()));
  return a.bracket(x, y);
}

GradedLieAlgebra quotient_algebra(const Graph& g, std::size_t k) {
  if (k < 2) throw Error("quotient_algebra: step must be at least 2");
  const std::size_t n = g.vertex_count();
  FreeLieAlgebra free(n, k);
  const auto& words = free.basis().words;

  // Ideal, degree by degree, as row spaces in the free Lyndon coordinates.
  std::vector<Subspace> ideal;
  ideal.emplace_back(words[0].size());
  Subspace j2(words[1].size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!g.adjacent(a, b)) j2.add(SparseVector{{free.index_of(Word{std::uint32_t(a), std::uint32_t(b)}), Rational(1)}});
  ideal.push_back(std::move(j2));
  for (std::size_t m = 3; m <= k; ++m) {
    Subspace jm(words[m - 1].size());
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> cache;  // (letter, word index) -> [letter, word]
    for (const auto& row : ideal[m - 2].rows())
      for (std::size_t a = 0; a < n; ++a) {
        SparseVector v;
        for (const auto& [w, c] : row) {
          auto key = std::make_pair(a, w);
          auto it = cache.find(key);
          if (it == cache.end())
            it = cache.emplace(key, free.bracket(Word{std::uint32_t(a)}, words[m - 2][w])).first;
          axpy(v, c, it->second);
        }
        jm.add(std::move(v));
      }
    ideal.push_back(std::move(jm));
  }

  // Surviving words are the non-pivot columns.
  GradedLieAlgebra::Parts parts;
  parts.step = k;
  parts.generators = g.vertices();
  std::vector<std::vector<long>> global(k);  // per degree: free column -> global index or -1
  for (std::size_t m = 1; m <= k; ++m) {
    global[m - 1].assign(words[m - 1].size(), -1);
    for (std::size_t c = 0; c < words[m - 1].size(); ++c) {
      if (ideal[m - 1].is_pivot(c)) continue;
      global[m - 1][c] = static_cast<long>(parts.basis.size());
      parts.basis.push_back({m, words[m - 1][c], bracket_label(words[m - 1][c], g.vertices())});
    }
    parts.ideal_dims.push_back(ideal[m - 1].dim());
  }
  const std::size_t dim = parts.basis.size();

  auto normal_form = [&](std::size_t degree, SparseVector free_coords) {
    SparseVector reduced = ideal[degree - 1].reduce(std::move(free_coords));
    SparseVector out;
    for (auto& [c, x] : reduced) {
      const long gi = global[degree - 1][c];
      if (gi < 0) throw InvariantViolation("normal form retained a pivot column");
      out.emplace_back(static_cast<std::size_t>(gi), std::move(x));
    }
    return out;
  };

  parts.brackets.assign(dim * dim, {});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      const auto& ei = parts.basis[i];
      const auto& ej = parts.basis[j];
      if (ei.degree + ej.degree > k) continue;
      SparseVector b = normal_form(ei.degree + ej.degree, free.bracket(ei.word, ej.word));
      SparseVector neg = b;
      for (auto& [l, x] : neg) x = -x;
      parts.brackets[i * dim + j] = std::move(b);
      parts.brackets[j * dim + i] = std::move(neg);
    }

  parts.factors.assign(dim, std::nullopt);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& e = parts.basis[i];
    if (e.degree < 2) continue;
    auto [u, v] = standard_factorization(e.word);
    SparseVector left = normal_form(u.size(), SparseVector{{free.index_of(u), Rational(1)}});
    SparseVector right = normal_form(v.size(), SparseVector{{free.index_of(v), Rational(1)}});
    parts.factors[i] = std::make_pair(std::move(left), std::move(right));
  }

  GradedLieAlgebra result(std::move(parts));
  for (std::size_t i = 0; i < result.dim(); ++i) {
    const auto& f = result.factors(i);
    if (!f) continue;
    if (result.bracket(f->first, f->second) != SparseVector{{i, Rational(1)}})
      throw InvariantViolation("factor pair does not reproduce basis element " + result.element(i).label);
  }
  return result;
}

TopQuotient quotient_top_degree(const GradedLieAlgebra& a, const std::vector<SparseVector>& kill) {
  const std::size_t top = a.step();
  const std::size_t base = a.offset(top);
  const std::size_t width = a.dim(top);
  Subspace killed(width);
  for (const auto& v : kill) {
    SparseVector local;
    for (const auto& [i, x] : v) {
      if (i < base || i >= base + width) throw SpecError("vector to quotient by is not in the top-degree component");
      local.emplace_back(i - base, x);
    }
    killed.add(std::move(local));
  }
  if (killed.dim() == 0) throw SpecError("vector to quotient by is zero");

  TopQuotient out;
  std::vector<long> new_index(a.dim(), -1);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i >= base && killed.is_pivot(i - base)) continue;
    new_index[i] = static_cast<long>(out.lift.size());
    out.lift.push_back(i);
  }
  const std::size_t dim = out.lift.size();

  auto project = [&](const SparseVector& v) {
    SparseVector lower;
    SparseVector local;
    for (const auto& [i, x] : v) {
      if (i < base)
        lower.emplace_back(static_cast<std::size_t>(new_index[i]), x);
      else
        local.emplace_back(i - base, x);
    }
    for (auto& [c, x] : killed.reduce(std::move(local)))
      lower.emplace_back(static_cast<std::size_t>(new_index[base + c]), std::move(x));
    return lower;
  };

  GradedLieAlgebra::Parts parts;
  parts.step = a.step();
  parts.generators = a.generators();
  for (std::size_t i : out.lift) parts.basis.push_back(a.element(i));
  parts.brackets.assign(dim * dim, {});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) parts.brackets[i * dim + j] = project(a.bracket(out.lift[i], out.lift[j]));
  parts.factors.assign(dim, std::nullopt);
  for (std::size_t i = 0; i < dim; ++i)
    if (const auto& f = a.factors(out.lift[i])) parts.factors[i] = std::make_pair(project(f->first), project(f->second));
  parts.ideal_dims = a.ideal_dims();
  parts.ideal_dims[top - 1] += killed.dim();

  out.projection = RatMatrix(dim, a.dim());
  for (std::size_t c = 0; c < a.dim(); ++c)
    for (const auto& [r, x] : project(SparseVector{{c, Rational(1)}})) out.projection(r, c) = x;
  out.algebra = GradedLieAlgebra(std::move(parts));
  return out;
}

std::optional<std::array<std::size_t, 3>> find_jacobi_violation(const GradedLieAlgebra& a) {
  const std::size_t n = a.dim();
  auto unit = [](std::size_t i) { return SparseVector{{i, Rational(1)}}; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        if (a.degree_of(i) + a.degree_of(j) + a.degree_of(l) > a.step()) continue;
        SparseVector sum = a.bracket(a.bracket(i, j), unit(l));
        axpy(sum, Rational(1), a.bracket(a.bracket(j, l), unit(i)));
        axpy(sum, Rational(1), a.bracket(a.bracket(l, i), unit(j)));
        if (!sum.empty()) return std::array<std::size_t, 3>{i, j, l};
      }
  return std::nullopt;
}

}  // namespace anosograph
