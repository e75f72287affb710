#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anosograph/anosov.hpp"
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

std::vector<std::vector<bool>> adjacency(const Graph& g) {
  std::vector<std::vector<bool>> adj(g.vertex_count(), std::vector<bool>(g.vertex_count()));
  for (const auto& [a, b] : g.edges()) adj[a][b] = adj[b][a] = true;
  return adj;
}

oracle::ZMat to_oracle(const IntMatrix& a) {
  oracle::ZMat m(a.rows(), std::vector<oracle::Z>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

const Graph& four_cycle() {
  static const Graph g = cycle_graph(4);
  return g;
}

}  // namespace

TEST_CASE("verdict agrees with the adjacency oracle on all small graphs") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
      Graph g = from_mask(n, mask);
      auto p = coherent_components(g);
      for (std::size_t k = 2; k <= 4; ++k) {
        auto v = decide_anosov(p, k);
        CHECK(v.admits == oracle::admits_anosov(adjacency(g), k));
        CHECK(v.admits == v.violations.empty());
      }
    }
  }
}

TEST_CASE("complete graphs admit exactly when n > k") {
  for (std::size_t n = 2; n <= 7; ++n)
    for (std::size_t k = 2; k <= 6; ++k) {
      auto v = decide_anosov(coherent_components(complete_graph(n)), k);
      CHECK(v.admits == (n > k));
      if (!v.admits) {
        REQUIRE(v.violations.size() == 1);
        CHECK(v.violations[0].reason == ViolationReason::internal_edge_in_small_class);
        CHECK(v.violations[0].edge.has_value());
      }
    }
}

TEST_CASE("4-cycle and magnets") {
  for (std::size_t k = 2; k <= 6; ++k) CHECK(decide_anosov(coherent_components(four_cycle()), k).admits);
  for (std::size_t c = 2; c <= 4; ++c)
    for (std::size_t rest = 2; rest <= 3; ++rest)
      for (std::size_t k = 2; k <= 6; ++k)
        CHECK(decide_anosov(coherent_components(magnet_graph(c, rest)), k).admits == (k < c));
  auto path = decide_anosov(coherent_components(parse_graph("a b\nb c\n")), 2);
  CHECK_FALSE(path.admits);
  CHECK(path.violations[0].reason == ViolationReason::singleton_class);
  CHECK_THROWS_AS(decide_anosov(coherent_components(four_cycle()), 1), Error);
  Json j = to_json(decide_anosov(coherent_components(complete_graph(3)), 3), complete_graph(3));
  CHECK(j["admits"] == false);
  CHECK(j["violations"][0]["reason"] == "internal-edge-in-small-class");
}

TEST_CASE("companion matrices") {
  IntPolynomial p{-1, -1, 1};
  IntMatrix c = companion_matrix(p);
  CHECK(char_poly(c) == p);
  IntPolynomial q{1, 0, -3, 2, 1};
  CHECK(char_poly(companion_matrix(q)) == q);
  CHECK_THROWS_AS(companion_matrix(IntPolynomial{1, 2}), Error);
}

TEST_CASE("component search") {
  ComponentSearchConfig cfg;
  auto m2 = find_component_matrix(2, 2, cfg);
  CHECK(m2.polynomial == IntPolynomial{-1, -1, 1});
  CHECK_FALSE(m2.from_random_phase);
  // Products of both eigenvalues of a unimodular 2x2 matrix have modulus 1.
  CHECK(m2.products.r_max == 1);

  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t k = 2; k <= 4; ++k) {
      auto m = find_component_matrix(d, k, cfg);
      CHECK(m.products.off_circle);
      CHECK(abs(determinant(m.matrix)) == 1);
      // Independent check: no product of r <= min(k, d-1) eigenvalues on the circle.
      if (d == 4)
        for (std::size_t r = 1; r <= std::min(k, d - 1); ++r) {
          auto pp = oracle::trim(oracle::product_poly(to_oracle(m.matrix), r));
          CHECK_FALSE(oracle::has_unit_root(pp));
        }
    }

  auto first = find_component_matrix(3, 2, cfg, 0);
  auto second = find_component_matrix(3, 2, cfg, 1);
  CHECK_FALSE(first.polynomial == second.polynomial);

  ComponentSearchConfig none{0, 0, 0, 256};
  CHECK_THROWS_AS(find_component_matrix(2, 2, none), ComponentSearchExhausted);
  ComponentSearchConfig random_only{0, 5, 1000, 256};
  auto r = find_component_matrix(2, 2, random_only);
  CHECK(r.from_random_phase);
  CHECK(r.products.off_circle);
}

TEST_CASE("extension of degree-1 maps") {
  const Graph& g = four_cycle();
  auto h = quotient_algebra(g, 3);
  auto id = extend_to_algebra(h, IntMatrix::identity(4));
  REQUIRE(id.size() == 3);
  for (std::size_t m = 0; m < 3; ++m) CHECK(id[m] == RatMatrix::identity(h.dim(m + 1)));

  // Swapping two adjacent vertices does not preserve the graph relations.
  IntMatrix swap(4, 4);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = swap(3, 3) = 1;
  CHECK_THROWS_AS(extend_to_algebra(h, swap), DescentError);
  // The rotation is a graph automorphism.
  IntMatrix rot(4, 4);
  for (std::size_t i = 0; i < 4; ++i) rot((i + 1) % 4, i) = 1;
  auto blocks = extend_to_algebra(h, rot);
  CHECK_FALSE(find_bracket_violation(h, blocks).has_value());
  CHECK_THROWS_AS(extend_to_algebra(h, IntMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("exponent ladder") {
  CHECK(exponent_ladder(10) == std::vector<std::size_t>{1, 2, 3, 4, 5, 7, 8, 9});
  CHECK(exponent_ladder(1) == std::vector<std::size_t>{1});
  CHECK(exponent_ladder(0).empty());
}

TEST_CASE("synthesize and verify") {
  struct Case {
    Graph g;
    std::size_t k;
  };
  std::vector<Case> cases{{four_cycle(), 2}, {four_cycle(), 3}, {complete_graph(5), 3}, {complete_bipartite(2, 3), 3}};
  for (const auto& c : cases) {
    CAPTURE(c.g.canonical_text());
    CAPTURE(c.k);
    auto cert = synthesize(c.g, c.k);
    auto report = verify_certificate(c.g, cert);
    CHECK(report.ok);
    CHECK(report.passed.size() == 5);
    auto back = AutomorphismCertificate::from_json(Json::parse(cert.to_json().dump()));
    CHECK(back.to_json() == cert.to_json());
    CHECK(verify_certificate(c.g, back).ok);

    // det of the degree-m block is the product of determinants... all unimodular here.
    for (const auto& d : cert.determinants) CHECK(abs(d) == 1);
  }
}

TEST_CASE("4-cycle at step 2 uses exponents (1, 2)") {
  auto cert = synthesize(four_cycle(), 2);
  REQUIRE(cert.components.size() == 2);
  CHECK(cert.components[0].exponent == 1);
  CHECK(cert.components[1].exponent == 2);
  CHECK(cert.components[0].char_poly == IntPolynomial{-1, -1, 1});
  auto dims = quotient_algebra(four_cycle(), 2).dims();
  CHECK(cert.degree_blocks[1].rows() == dims[1]);
}

TEST_CASE("degree-2 spectrum is the set of pair products") {
  // For the 4-cycle, degree 2 is spanned by the brackets of the four edges; its
  // eigenvalues are the products lambda_a mu_b with lambda from one class and mu
  // from the other.
  auto cert = synthesize(four_cycle(), 2);
  const IntMatrix& g1 = cert.degree_blocks[0];
  // Resultant oracle: roots of product_poly(g1, 2) are all pair products.
  auto all_pairs = oracle::trim(oracle::product_poly(to_oracle(g1), 2));
  auto deg2 = cert.char_polys[1];
  // Every root of the degree-2 char poly is a root of the pair-product polynomial.
  oracle::ZPoly q(all_pairs.begin(), all_pairs.end());
  IntPolynomial pairs(std::vector<Integer>(q.begin(), q.end()));
  CHECK(gcd(pairs, deg2).degree() == deg2.degree());
}

TEST_CASE("verification catches tampering") {
  const Graph& g = four_cycle();
  auto cert = synthesize(g, 3);

  auto bad_block = cert;
  bad_block.degree_blocks[1](0, 0) += 1;
  auto r = verify_certificate(g, bad_block);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_check == "bracket-compatibility");

  auto bad_hash = cert;
  bad_hash.graph_hash[0] = bad_hash.graph_hash[0] == '0' ? '1' : '0';
  CHECK(verify_certificate(g, bad_hash).failed_check == "binding");
  CHECK(verify_certificate(complete_graph(4), cert).failed_check == "binding");

  auto bad_exp = cert;
  bad_exp.components[0].exponent += 1;
  CHECK(verify_certificate(g, bad_exp).failed_check == "degree-1-block");

  auto bad_det = cert;
  bad_det.determinants[0] = -bad_det.determinants[0];
  CHECK(verify_certificate(g, bad_det).failed_check == "unimodularity");

  auto bad_poly = cert;
  bad_poly.char_polys[2] = IntPolynomial{1, 1};
  CHECK(verify_certificate(g, bad_poly).failed_check == "unit-root-freeness");

  // Identity components: compatible and unimodular, but every eigenvalue is 1.
  auto ident = cert;
  auto h = quotient_algebra(g, 3);
  for (auto& c : ident.components) {
    c.matrix = IntMatrix::identity(c.matrix.rows());
    c.exponent = 1;
  }
  ident.degree_blocks.clear();
  ident.char_polys.clear();
  ident.determinants.clear();
  for (const auto& b : extend_to_algebra(h, IntMatrix::identity(4))) {
    auto ib = *to_integer(b);
    ident.char_polys.push_back(char_poly(ib));
    ident.determinants.push_back(determinant(ib));
    ident.degree_blocks.push_back(std::move(ib));
  }
  auto ri = verify_certificate(g, ident);
  CHECK(ri.failed_check == "unit-root-freeness");
  CHECK(ri.passed.size() == 4);
}

TEST_CASE("synthesis refuses non-admissible graphs") {
  CHECK_THROWS_AS(synthesize(complete_graph(3), 3), NotAdmissible);
  CHECK_THROWS_AS(synthesize(parse_graph("a b\nb c\n"), 2), NotAdmissible);
  SynthesisConfig tiny;
  tiny.max_exponent = 0;
  CHECK_THROWS_AS(synthesize(four_cycle(), 2, tiny), ExponentLadderExhausted);
}

TEST_CASE("certificate parsing errors") {
  CHECK_THROWS_AS(AutomorphismCertificate::from_json(Json::object()), ParseError);
  Json j = synthesize(four_cycle(), 2).to_json();
  j["components"][0].erase("matrix");
  CHECK_THROWS_AS(AutomorphismCertificate::from_json(j), ParseError);
}
