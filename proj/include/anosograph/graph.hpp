#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anosograph/json_io.hpp"

namespace anosograph {

using Edge = std::pair<std::size_t, std::size_t>;  // always first < second

/// Finite simple graph. Vertex order is the canonical basis order of V.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>>& edges);
  Graph(std::vector<std::string> vertices, std::set<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  const std::string& label(std::size_t v) const { return vertices_.at(v); }
  std::size_t index_of(std::string_view label) const;

  bool adjacent(std::size_t a, std::size_t b) const;

  /// Open neighbourhood of v as a sorted vertex list.
  std::vector<std::size_t> neighbours(std::size_t v) const;

  /// Canonical serialization used as the digest input for certificates.
  std::string canonical_text() const;

 private:
  void build_adjacency();

  std::vector<std::string> vertices_;
  std::set<Edge> edges_;
  std::vector<std::vector<bool>> adjacency_;
};

/// Parses the edge-list format: "u v" lines, "vertex: u" lines, '#' comments.
Graph parse_graph(std::string_view text);

/// Hex SHA-256 of `canonical_text()`.
std::string graph_digest(const Graph& g);

// Named graph families used across tests, examples and the acceptance suite.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_bipartite(std::size_t m, std::size_t n);
/// Core of size `core` joined to everything; `rest` further pairwise non-adjacent vertices.
Graph magnet_graph(std::size_t core, std::size_t rest);
Graph edgeless_graph(std::size_t n);

struct CoherentPartition {
  std::vector<std::vector<std::size_t>> classes;  // each sorted; ordered by smallest member
  std::vector<std::size_t> class_of;
  std::vector<std::vector<Edge>> internal_edges;  // per class
  std::set<Edge> pair_edges;                      // class-index pairs, first < second

  std::size_t class_count() const noexcept { return classes.size(); }
};

/// Equivalence classes of: a ~ b iff a == b, or N(a) is inside N[b] and N(b) inside N[a].
CoherentPartition coherent_components(const Graph& g);

Json to_json(const CoherentPartition& p, const Graph& g);

}  // namespace anosograph
