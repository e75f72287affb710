#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anosograph/anosov.hpp"
#include "anosograph/derivations.hpp"
#include "oracles.hpp"

using namespace anosograph;

namespace {

Graph labeled(std::vector<std::string> labels, std::vector<std::pair<std::string, std::string>> edges) {
  return Graph(std::move(labels), edges);
}

Graph smallest() { return labeled({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}, {"a", "c"}, {"a", "d"}}); }

QuotientSpec spec2(std::string a, std::string b, std::string c, std::string d) {
  QuotientSpec s;
  s.step = 2;
  s.terms = {{{a, b}, 1}, {{c, d}, 1}};
  return s;
}

QuotientSpec spec3(std::vector<std::pair<std::vector<std::string>, Rational>> terms) {
  QuotientSpec s;
  s.step = 3;
  for (auto& [l, c] : terms) s.terms.push_back({l, c});
  return s;
}

std::vector<std::vector<std::vector<oracle::Q>>> structure(const GradedLieAlgebra& a) {
  const std::size_t d = a.dim();
  std::vector<std::vector<std::vector<oracle::Q>>> c(d, std::vector<std::vector<oracle::Q>>(d, std::vector<oracle::Q>(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [t, x] : a.bracket(i, j)) c[i][j][t] = x;
  return c;
}

GradedLieAlgebra abelian(std::size_t n) {
  GradedLieAlgebra::Parts p;
  p.step = 1;
  for (std::size_t i = 0; i < n; ++i) {
    p.generators.push_back("x" + std::to_string(i));
    p.basis.push_back({1, Word{i}, p.generators.back()});
  }
  p.brackets.assign(n * n, {});
  p.factors.assign(n, std::nullopt);
  p.ideal_dims = {0};
  return GradedLieAlgebra(std::move(p));
}

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

bool nilpotent(const RatMatrix& m) {
  RatMatrix p = m;
  for (std::size_t i = 1; i < m.rows(); ++i) p = p * m;
  return p == RatMatrix(m.rows(), m.cols());
}

}  // namespace

TEST_CASE("quotient specs: validation and dimensions") {
  CHECK(build_quotient(smallest(), spec2("a", "b", "c", "d")).dims() == std::vector<std::size_t>{4, 3});
  CHECK(build_quotient(complete_graph(4), spec2("v0", "v1", "v2", "v3")).dims() == std::vector<std::size_t>{4, 5});
  CHECK(build_quotient(cycle_graph(4), spec3({{{"v0", "v0", "v1"}, 1}})).dims() == std::vector<std::size_t>{4, 4, 11});

  // Term order and a joint reversal name the same line.
  auto r1 = quadruple_roles(smallest(), spec2("c", "d", "a", "b"));
  CHECK(r1.alpha == 0);
  CHECK(r1.gamma == 2);
  auto r2 = quadruple_roles(smallest(), spec2("d", "c", "b", "a"));
  CHECK(r2.alpha == 0);
  CHECK(r2.beta == 1);

  CHECK_THROWS_AS(quadruple_roles(smallest(), spec2("a", "b", "a", "d")), SpecError);
  CHECK_THROWS_AS(quadruple_roles(smallest(), spec2("a", "b", "b", "c")), SpecError);  // bc not an edge
  CHECK_THROWS_AS(quadruple_roles(smallest(), spec2("a", "b", "c", "z")), SpecError);
  // alpha gamma and alpha delta are required: the 4-cycle has a perfect matching but no such vertex.
  CHECK_THROWS_AS(quadruple_roles(cycle_graph(4), spec2("v0", "v1", "v2", "v3")), SpecError);
  QuotientSpec single;
  single.terms = {{{"a", "b"}, 1}};
  CHECK_THROWS_AS(lift_check(smallest(), single), SpecError);
  CHECK_THROWS_AS(span_report(smallest(), single), SpecError);
  QuotientSpec scaled = spec2("a", "b", "c", "d");
  scaled.terms[1].coefficient = 2;
  CHECK_THROWS_AS(build_quotient(smallest(), scaled), SpecError);
  CHECK_THROWS_AS(build_quotient(cycle_graph(4), spec3({{{"v0", "v1", "v1"}, 1}})), SpecError);
  // [v1, v3] = 0: v1 v3 is not an edge of the 4-cycle.
  CHECK_THROWS_AS(build_quotient(cycle_graph(4), spec3({{{"v0", "v1", "v3"}, 1}})), SpecError);
}

TEST_CASE("quotient spec JSON") {
  Json j = Json::parse(R"({"step": 3, "X": [{"bracket": ["v0", "v0", "v1"], "coefficient": "1/2"},
                                           {"bracket": ["v1", "v1", "v0"]}]})");
  auto s = QuotientSpec::from_json(j);
  CHECK(s.step == 3);
  REQUIRE(s.terms.size() == 2);
  CHECK(s.terms[0].coefficient == Rational(1, 2));
  CHECK(s.terms[1].coefficient == 1);
  CHECK(QuotientSpec::from_json(s.to_json()).to_json() == s.to_json());
  CHECK_THROWS_AS(QuotientSpec::from_json(Json::parse(R"({"step": 4, "X": []})")), SpecError);
  CHECK_THROWS_AS(QuotientSpec::from_json(Json::parse(R"({"step": 2, "X": [{"bracket": ["a"]}]})")), SpecError);
  CHECK_THROWS_AS(QuotientSpec::from_json(Json::parse(R"({"X": []})")), ParseError);
  CHECK_THROWS_AS(QuotientSpec::from_json(Json::parse("[1]")), ParseError);
}

TEST_CASE("derivation algebra examples") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(derivation_algebra(abelian(n)).dimension() == n * n);
  auto heis = quotient_algebra(complete_graph(2), 2);
  REQUIRE(heis.dims() == std::vector<std::size_t>{2, 1});
  CHECK(derivation_algebra(heis).dimension() == 6);
  auto single_edge = quotient_algebra(labeled({"p", "q"}, {{"p", "q"}}), 2);
  CHECK(derivation_algebra(single_edge).dimension() == 6);
  // Stabilizing V: gl(2) only.
  CHECK(derivation_algebra(heis, true).dimension() == 4);
  CHECK(oracle::derivation_dim(structure(heis)) == 6);
}

TEST_CASE("derivation dimensions agree with the dense solve") {
  std::vector<GradedLieAlgebra> algebras;
  for (std::size_t n = 2; n <= 4; ++n) {
    const unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
    for (unsigned mask = 0; mask < (1u << pairs); ++mask)
      for (std::size_t k = 2; k <= 3; ++k) {
        auto h = quotient_algebra(from_mask(n, mask), k);
        if (h.dim() <= 14) algebras.push_back(std::move(h));
      }
  }
  algebras.push_back(build_quotient(smallest(), spec2("a", "b", "c", "d")));
  algebras.push_back(build_quotient(complete_graph(4), spec2("v0", "v1", "v2", "v3")));
  for (const auto& a : algebras) {
    CAPTURE(a.to_json().dump());
    auto d = derivation_algebra(a);
    CHECK(d.dimension() == oracle::derivation_dim(structure(a)));
    for (const auto& m : d.basis) CHECK_FALSE(find_derivation_violation(a, m).has_value());
  }
}

TEST_CASE("inner derivations are nilpotent derivations inside the computed algebra") {
  for (const auto& a : {quotient_algebra(cycle_graph(4), 3), build_quotient(smallest(), spec2("a", "b", "c", "d")),
                        build_quotient(cycle_graph(4), spec3({{{"v0", "v0", "v1"}, 1}}))}) {
    auto d = derivation_algebra(a);
    Subspace span(a.dim() * a.dim());
    auto flat = [&](const RatMatrix& m) {
      SparseVector v;
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (m(i, j) != 0) v.emplace_back(i * m.cols() + j, m(i, j));
      return v;
    };
    for (const auto& m : d.basis) CHECK(span.add(flat(m)));
    for (std::size_t x = 0; x < a.dim(); ++x) {
      RatMatrix ad = inner_derivation(a, SparseVector{{x, Rational(1)}});
      CHECK_FALSE(find_derivation_violation(a, ad).has_value());
      CHECK(span.contains(flat(ad)));
      CHECK(nilpotent(ad));
    }
  }
}

TEST_CASE("non-derivations are caught") {
  auto a = quotient_algebra(cycle_graph(4), 2);
  RatMatrix id = RatMatrix::identity(a.dim());
  CHECK(find_derivation_violation(a, id).has_value());  // D[x,y] = [x,y] but [Dx,y]+[x,Dy] = 2[x,y]
  RatMatrix on_v(4, 4);
  on_v(1, 0) = 1;  // v0 -> v1 sends the relation [v0, v2] = 0 to [v1, v2] != 0
  CHECK_FALSE(extend_derivation(a, on_v).has_value());
  CHECK(extend_derivation(a, RatMatrix::identity(4)).has_value());
}

TEST_CASE("span report on the named instances") {
  auto small = span_report(smallest(), spec2("a", "b", "c", "d"));
  CHECK(small.holds());
  CHECK(small.algebra_dim == small.span_dim);
  CHECK(small.algebra_dim == derivation_algebra(build_quotient(smallest(), spec2("a", "b", "c", "d")), true).dimension());

  auto k4 = span_report(complete_graph(4), spec2("v0", "v1", "v2", "v3"));
  CHECK(k4.holds());

  auto k5 = span_report(complete_graph(5), spec2("v0", "v1", "v2", "v3"));
  CHECK(k5.holds());
  std::size_t outside = 0;
  for (const auto& f : k5.families)
    if (f.name.find("outside S'") != std::string::npos && f.name.find(", eta, zeta") == std::string::npos)
      outside += f.dimension;
  CHECK(outside > 0);

  Json j = k5.to_json();
  CHECK(j["holds"] == true);
  CHECK(j["families"].size() == 9);
  CHECK(j["roles"]["alpha"] == "v0");
}

TEST_CASE("span report and lift check on every configuration up to six vertices") {
  // Vertices 0..3 carry alpha beta, gamma delta, alpha gamma, alpha delta; all other pairs free.
  for (std::size_t n = 4; n <= 6; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (!((a == 0 && b == 1) || (a == 2 && b == 3) || (a == 0 && b == 2) || (a == 0 && b == 3)))
          free.emplace_back(a, b);
    const std::size_t stride = n == 6 ? 7 : 1;  // a spread sample of the 2048 six-vertex graphs
    for (unsigned mask = 0; mask < (1u << free.size()); mask += static_cast<unsigned>(stride)) {
      std::set<Edge> edges{{0, 1}, {2, 3}, {0, 2}, {0, 3}};
      for (std::size_t i = 0; i < free.size(); ++i)
        if (mask >> i & 1u) edges.insert(free[i]);
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
      Graph g(labels, edges);
      auto spec = spec2("v0", "v1", "v2", "v3");
      CAPTURE(g.canonical_text());
      auto s = span_report(g, spec);
      CHECK(s.holds());
      CHECK(lift_check(g, spec).holds());
    }
  }
}

TEST_CASE("lift check") {
  for (const auto& [g, s] : std::vector<std::pair<Graph, QuotientSpec>>{
           {smallest(), spec2("a", "b", "c", "d")}, {complete_graph(4), spec2("v0", "v1", "v2", "v3")},
           {complete_graph(5), spec2("v0", "v1", "v2", "v3")}}) {
    auto r = lift_check(g, s);
    CHECK(r.holds());
    CHECK(r.target_dim == derivation_algebra(build_quotient(g, s), true).dimension());
    CHECK(r.to_json()["holds"] == true);
  }
}

TEST_CASE("hyperbolic search: quotients have none, the control has one") {
  auto q5 = build_quotient(smallest(), spec2("a", "b", "c", "d"));
  SearchConfig cfg;
  cfg.entry_bound = 2;
  cfg.budget = 3000;
  auto r = hyperbolic_search(q5, cfg);
  CHECK(r.findings.empty());
  CHECK(r.compatible > 0);
  CHECK(r.compatible == r.top_degree_unit_root);
  CHECK_FALSE(r.exhaustive);

  auto q6 = build_quotient(cycle_graph(4), spec3({{{"v0", "v0", "v1"}, 1}}));
  SearchConfig c6;
  c6.entry_bound = 1;
  c6.budget = 10000;
  auto r6 = hyperbolic_search(q6, c6);
  CHECK(r6.findings.empty());
  CHECK(r6.exhaustive);
  CHECK(r6.compatible == r6.top_degree_unit_root);

  const Graph c4 = cycle_graph(4);
  auto h2 = quotient_algebra(c4, 2);
  auto cert = synthesize(c4, 2);
  SearchConfig ctl;
  ctl.entry_bound = 2;
  ctl.budget = 2000;
  ctl.plants = {cert.degree_blocks[0]};
  auto rc = hyperbolic_search(h2, ctl);
  REQUIRE_FALSE(rc.findings.empty());
  CHECK(rc.findings[0].phase == "plant");
  CHECK(rc.findings[0].matrix == cert.degree_blocks[0]);
  for (const auto& f : rc.findings) {
    std::vector<oracle::Z> coeffs(f.char_poly.coefficients().begin(), f.char_poly.coefficients().end());
    CHECK_FALSE(oracle::has_unit_root(coeffs));
    CHECK(abs(f.char_poly.coeff(0)) == 1);
  }
  Json j = rc.to_json();
  CHECK(j["box"]["entry_bound"] == 2);
  CHECK(j["findings"][0]["phase"] == "plant");

  IntMatrix big = cert.degree_blocks[0];
  big(0, 0) = 5;
  SearchConfig bad = ctl;
  bad.plants = {big};
  CHECK_THROWS_AS(hyperbolic_search(h2, bad), Error);
}

TEST_CASE("hyperbolic search is backend independent and reproducible") {
  auto q5 = build_quotient(smallest(), spec2("a", "b", "c", "d"));
  SearchConfig cfg;
  cfg.entry_bound = 1;
  cfg.budget = 1500;
  cfg.seed = 11;
  cfg.backend = kernels::Backend::scalar;
  Json reference = hyperbolic_search(q5, cfg).to_json();
  reference.erase("backend");
  for (auto b : kernels::available_backends()) {
    cfg.backend = b;
    Json j = hyperbolic_search(q5, cfg).to_json();
    j.erase("backend");
    CHECK(j == reference);
  }
}
