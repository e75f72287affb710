#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anosograph/graph.hpp"

using namespace anosograph;

namespace {

// Labeled graph on n vertices from an edge bitmask over pairs (a < b).
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

}  // namespace

TEST_CASE("parse_graph reads edges and declared vertices") {
  Graph g = parse_graph("a b\nb c\n");
  CHECK(g.vertices() == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));

  Graph h = parse_graph("# header\nvertex: z\n  a   b  # trailing\n\na b\n");
  CHECK(h.vertices() == std::vector<std::string>{"z", "a", "b"});
  CHECK(h.edge_count() == 1);
}

TEST_CASE("parse_graph rejects self-loops and empty input") {
  try {
    parse_graph("a b\nc c\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_graph("# nothing\n"), Error);
  CHECK_THROWS_AS(parse_graph("a b c\n"), ParseError);
}

TEST_CASE("canonical text and digest are stable") {
  Graph a = parse_graph("a b\nb c\n");
  Graph b = parse_graph("a b # first\n\nb c\na b\n");
  CHECK(graph_digest(a) == graph_digest(b));
  CHECK(graph_digest(a).size() == 64);
  CHECK(graph_digest(a) != graph_digest(parse_graph("a b\nb c\na c\n")));
}

TEST_CASE("4-cycle splits into opposite pairs") {
  Graph g = parse_graph("alpha beta\nbeta gamma\ngamma delta\ndelta alpha\n");
  auto p = coherent_components(g);
  REQUIRE(p.class_count() == 2);
  CHECK(p.classes[0] == std::vector<std::size_t>{0, 2});
  CHECK(p.classes[1] == std::vector<std::size_t>{1, 3});
  CHECK(p.internal_edges[0].empty());
  CHECK(p.internal_edges[1].empty());
  CHECK(p.pair_edges == std::set<Edge>{{0, 1}});
  Json j = to_json(p, g);
  CHECK(j["classes"][0][0] == "alpha");
  CHECK(j["classes"][0][1] == "gamma");
}

TEST_CASE("complete, edgeless and magnet graphs") {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto kp = coherent_components(complete_graph(n));
    REQUIRE(kp.class_count() == 1);
    CHECK(kp.internal_edges[0].size() == n * (n - 1) / 2);
    auto ep = coherent_components(edgeless_graph(n));
    REQUIRE(ep.class_count() == 1);
    CHECK(ep.internal_edges[0].empty());
  }
  for (std::size_t c = 1; c <= 4; ++c)
    for (std::size_t r = 2; r <= 3; ++r) {
      Graph g = magnet_graph(c, r);
      auto p = coherent_components(g);
      REQUIRE(p.class_count() == 2);
      CHECK(p.classes[0].size() == c);
      CHECK(p.classes[1].size() == r);
      CHECK(p.internal_edges[0].size() == c * (c - 1) / 2);
      CHECK(p.internal_edges[1].empty());
    }
}

TEST_CASE("partition properties hold on every labeled graph with at most 6 vertices") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const unsigned masks = 1u << (n * (n - 1) / 2);
    for (unsigned mask = 0; mask < masks; ++mask) {
      Graph g = from_mask(n, mask);
      CoherentPartition p;
      REQUIRE_NOTHROW(p = coherent_components(g));
      std::vector<int> seen(n, 0);
      for (std::size_t c = 0; c < p.class_count(); ++c)
        for (auto v : p.classes[c]) {
          ++seen[v];
          REQUIRE(p.class_of[v] == c);
        }
      for (int s : seen) REQUIRE(s == 1);
      for (std::size_t c = 1; c < p.class_count(); ++c) REQUIRE(p.classes[c - 1][0] < p.classes[c][0]);
      // pair_edges against a direct edge scan
      std::set<Edge> cross;
      for (const auto& [a, b] : g.edges()) {
        auto ca = p.class_of[a], cb = p.class_of[b];
        if (ca != cb) cross.emplace(std::min(ca, cb), std::max(ca, cb));
      }
      REQUIRE(cross == p.pair_edges);
    }
  }
}

TEST_CASE("merging closed-neighbourhood twins never splits a class") {
  for (unsigned mask = 0; mask < (1u << 10); ++mask) {
    Graph g = from_mask(5, mask);
    auto p = coherent_components(g);
    // add v5 as a twin of v0: adjacent to v0 and to N(v0)
    std::set<Edge> edges = g.edges();
    for (auto u : g.neighbours(0)) edges.emplace(u, 5);
    edges.emplace(0, 5);
    auto labels = g.vertices();
    labels.push_back("v5");
    auto q = coherent_components(Graph(labels, edges));
    // q has twins v0, v5; merging them gives back g with partition p.
    CHECK(q.class_of[0] == q.class_of[5]);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b)
        if (q.class_of[a] == q.class_of[b]) REQUIRE(p.class_of[a] == p.class_of[b]);
  }
}
