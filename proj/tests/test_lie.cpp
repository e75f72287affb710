#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anosograph/lie_algebra.hpp"
#include "oracles.hpp"

using namespace anosograph;

namespace {

Graph from_mask(std::size_t n, unsigned mask) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::set<Edge> edges;
  std::size_t bit = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++bit)
      if (mask >> bit & 1u) edges.emplace(a, b);
  return Graph(labels, edges);
}

RatVector unit(std::size_t dim, std::size_t i) {
  RatVector v(dim);
  v[i] = 1;
  return v;
}

bool antisymmetric(const GradedLieAlgebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      SparseVector s = a.bracket(i, j);
      axpy(s, Rational(1), a.bracket(j, i));
      if (!s.empty()) return false;
      for (const auto& [l, c] : a.bracket(i, j))
        if (a.degree_of(l) != a.degree_of(i) + a.degree_of(j)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("Lyndon words") {
  CHECK(is_lyndon({0}));
  CHECK(is_lyndon({0, 1}));
  CHECK(is_lyndon({0, 0, 1}));
  CHECK(is_lyndon({0, 1, 1}));
  CHECK_FALSE(is_lyndon({1, 0}));
  CHECK_FALSE(is_lyndon({0, 1, 0, 1}));
  CHECK_FALSE(is_lyndon({0, 0}));
  auto [u, v] = standard_factorization({0, 0, 1});
  CHECK(u == Word{0});
  CHECK(v == Word{0, 1});
  auto [x, y] = standard_factorization({0, 1, 1});
  CHECK(x == Word{0, 1});
  CHECK(y == Word{1});
}

TEST_CASE("lyndon_basis dimensions match Witt numbers") {
  CHECK(lyndon_basis(2, 3).dims() == std::vector<std::size_t>{2, 1, 2});
  CHECK(lyndon_basis(4, 3).dims() == std::vector<std::size_t>{4, 6, 20});
  CHECK(lyndon_basis(1, 3).dims() == std::vector<std::size_t>{1, 0, 0});
  CHECK_THROWS_AS(lyndon_basis(3, 0), Error);
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t k = 1; k <= 5; ++k) {
      auto b = lyndon_basis(n, k);
      for (std::size_t m = 1; m <= k; ++m) {
        REQUIRE(Integer(static_cast<unsigned long>(b.words[m - 1].size())) == witt_number(n, m));
        for (const auto& w : b.words[m - 1]) REQUIRE(is_lyndon(w));
        REQUIRE(std::is_sorted(b.words[m - 1].begin(), b.words[m - 1].end()));
      }
    }
}

TEST_CASE("4-cycle at step 3 is 20-dimensional") {
  auto h = quotient_algebra(cycle_graph(4), 3);
  CHECK(h.dims() == std::vector<std::size_t>{4, 4, 12});
  CHECK(h.dim() == 20);
  CHECK(h.ideal_dims() == std::vector<std::size_t>{0, 2, 8});
  CHECK_FALSE(find_jacobi_violation(h));
  CHECK(antisymmetric(h));
}

TEST_CASE("complete bipartite degree-3 dimensions") {
  CHECK(quotient_algebra(complete_bipartite(2, 2), 3).dim(3) == 12);
  CHECK(quotient_algebra(complete_bipartite(2, 3), 3).dim(3) == 21);
  CHECK(quotient_algebra(complete_bipartite(3, 3), 3).dim(3) == 36);
}

TEST_CASE("bracket_eval on the step-2 algebra") {
  Graph g = parse_graph("a b\nb c\n");
  auto h = quotient_algebra(g, 2);
  REQUIRE(h.dims() == std::vector<std::size_t>{3, 2});
  RatVector ab = bracket_eval(h, unit(5, 0), unit(5, 1));
  auto idx = h.find("[a,b]");
  REQUIRE(idx);
  CHECK(ab == unit(5, *idx));
  CHECK(bracket_eval(h, unit(5, 0), unit(5, 2)) == RatVector(5));
  CHECK(bracket_eval(h, unit(5, 1), unit(5, 1)) == RatVector(5));
  CHECK_THROWS_AS(bracket_eval(h, unit(4, 0), unit(5, 1)), DimensionMismatch);
}

TEST_CASE("k = 2 gives |S| + |E| and complete graphs are free") {
  for (unsigned mask = 0; mask < 64; ++mask) {
    Graph g = from_mask(4, mask);
    REQUIRE(quotient_algebra(g, 2).dims() == std::vector<std::size_t>{4, g.edge_count()});
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    auto h = quotient_algebra(complete_graph(n), 4);
    for (std::size_t m = 1; m <= 4; ++m)
      CHECK(Integer(static_cast<unsigned long>(h.dim(m))) == witt_number(n, m));
  }
  auto e = quotient_algebra(edgeless_graph(4), 4);
  CHECK(e.dims() == std::vector<std::size_t>{4, 0, 0, 0});
  CHECK_THROWS_AS(quotient_algebra(complete_graph(3), 1), Error);
}

TEST_CASE("dimensions agree with tensor-algebra elimination on graphs with at most 5 vertices") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const unsigned masks = 1u << (n * (n - 1) / 2);
    for (unsigned mask = 0; mask < masks; mask += (n == 5 ? 7 : 1)) {
      Graph g = from_mask(n, mask);
      auto h = quotient_algebra(g, 3);
      REQUIRE(h.dims() == oracle::h_dims(g, 3));
      for (std::size_t m = 1; m <= 3; ++m)
        REQUIRE(Integer(static_cast<unsigned long>(h.dims()[m - 1] + h.ideal_dims()[m - 1])) == witt_number(n, m));
      REQUIRE_FALSE(find_jacobi_violation(h));
    }
  }
  for (const Graph& g : {cycle_graph(4), complete_bipartite(2, 3), complete_bipartite(3, 3), cycle_graph(5)})
    CHECK(quotient_algebra(g, 3).dims() == oracle::h_dims(g, 3));
  CHECK(quotient_algebra(cycle_graph(4), 4).dims() == oracle::h_dims(cycle_graph(4), 4));
}

TEST_CASE("adding an edge never decreases a dimension") {
  for (unsigned mask = 0; mask < 64; ++mask) {
    auto base = quotient_algebra(from_mask(4, mask), 3).dims();
    for (unsigned bit = 0; bit < 6; ++bit) {
      if (mask >> bit & 1u) continue;
      auto more = quotient_algebra(from_mask(4, mask | (1u << bit)), 3).dims();
      for (std::size_t m = 0; m < 3; ++m) REQUIRE(more[m] >= base[m]);
    }
  }
}

TEST_CASE("top-degree quotient removes the killed directions") {
  auto h = quotient_algebra(cycle_graph(4), 3);
  auto q = quotient_top_degree(h, {SparseVector{{h.offset(3), Rational(1)}}});
  CHECK(q.algebra.dims() == std::vector<std::size_t>{4, 4, 11});
  CHECK_FALSE(find_jacobi_violation(q.algebra));
  CHECK_THROWS_AS(quotient_top_degree(h, {SparseVector{{0, Rational(1)}}}), SpecError);
  CHECK_THROWS_AS(quotient_top_degree(h, {SparseVector{}}), SpecError);
  // The projection is a homomorphism.
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j) {
      RatVector lhs = q.projection * to_dense(h.bracket(i, j), h.dim());
      RatVector rhs = q.algebra.bracket(q.projection * unit(h.dim(), i), q.projection * unit(h.dim(), j));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("serialization carries dims and sparse structure") {
  auto h = quotient_algebra(parse_graph("a b\n"), 2);
  Json j = h.to_json();
  CHECK(j["k"] == 2);
  CHECK(j["dims"] == Json::array({2, 1}));
  CHECK(j["basis"][1][0] == "[a,b]");
  REQUIRE(j["structure"].size() == 1);
  CHECK(j["structure"][0] == Json::array({0, 1, 2, 1, 1}));
}
