#include "anosograph/graph.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "anosograph/errors.hpp"

namespace anosograph {

Graph::Graph(std::vector<std::string> vertices,
             const std::vector<std::pair<std::string, std::string>>& edges)
    : vertices_(std::move(vertices)) {
  for (const auto& [u, v] : edges) {
    const std::size_t a = index_of(u);
    const std::size_t b = index_of(v);
    if (a == b) throw ParseError(0, "self-loop at vertex '" + u + "'");
    edges_.insert({std::min(a, b), std::max(a, b)});
  }
  build_adjacency();
}

Graph::Graph(std::vector<std::string> vertices, std::set<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (const auto& [a, b] : edges_)
    if (a >= b || b >= vertices_.size()) throw InvariantViolation("edge indices must satisfy a < b < n");
  build_adjacency();
}

void Graph::build_adjacency() {
  if (vertices_.empty()) throw ParseError(0, "graph has no vertices");
  std::set<std::string> seen(vertices_.begin(), vertices_.end());
  if (seen.size() != vertices_.size()) throw ParseError(0, "duplicate vertex label");
  adjacency_.assign(vertices_.size(), std::vector<bool>(vertices_.size(), false));
  for (const auto& [a, b] : edges_) adjacency_[a][b] = adjacency_[b][a] = true;
}

std::size_t Graph::index_of(std::string_view label) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end()) throw ParseError(0, "unknown vertex '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Graph::adjacent(std::size_t a, std::size_t b) const { return adjacency_.at(a).at(b); }

std::vector<std::size_t> Graph::neighbours(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < vertices_.size(); ++u)
    if (adjacency_[v][u]) out.push_back(u);
  return out;
}

std::string Graph::canonical_text() const {
  std::ostringstream os;
  os << "vertices " << vertices_.size() << '\n';
  for (const auto& v : vertices_) os << v << '\n';
  os << "edges " << edges_.size() << '\n';
  for (const auto& [a, b] : edges_) os << a << ' ' << b << '\n';
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t> index;
  std::set<Edge> edges;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, vertices.size());
    if (inserted) vertices.push_back(label);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.rfind("vertex:", 0) == 0) {
      auto fields = split_ws(line.substr(7));
      if (fields.size() != 1) throw ParseError(line_no, "expected 'vertex: <label>'");
      intern(fields[0]);
    } else {
      auto fields = split_ws(line);
      if (fields.size() != 2) throw ParseError(line_no, "expected an edge 'u v'");
      if (fields[0] == fields[1]) throw ParseError(line_no, "self-loop at vertex '" + fields[0] + "'");
      const std::size_t a = intern(fields[0]);
      const std::size_t b = intern(fields[1]);
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    if (end == text.size()) break;
  }
  if (vertices.empty()) throw ParseError(0, "empty graph: at least one vertex is required");
  return Graph(std::move(vertices), std::move(edges));
}

std::string graph_digest(const Graph& g) {
  const std::string text = g.canonical_text();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace {

std::vector<std::string> labels(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Graph complete_graph(std::size_t n) {
  std::set<Edge> e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) e.insert({a, b});
  return Graph(labels("v", n), std::move(e));
}

Graph cycle_graph(std::size_t n) {
  std::set<Edge> e;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t b = (a + 1) % n;
    if (a != b) e.insert({std::min(a, b), std::max(a, b)});
  }
  return Graph(labels("v", n), std::move(e));
}

Graph complete_bipartite(std::size_t m, std::size_t n) {
  auto v = labels("a", m);
  auto w = labels("b", n);
  v.insert(v.end(), w.begin(), w.end());
  std::set<Edge> e;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b) e.insert({a, m + b});
  return Graph(std::move(v), std::move(e));
}

Graph magnet_graph(std::size_t core, std::size_t rest) {
  auto v = labels("c", core);
  auto w = labels("x", rest);
  v.insert(v.end(), w.begin(), w.end());
  std::set<Edge> e;
  for (std::size_t a = 0; a < core; ++a)
    for (std::size_t b = a + 1; b < core + rest; ++b) e.insert({a, b});
  return Graph(std::move(v), std::move(e));
}

Graph edgeless_graph(std::size_t n) { return Graph(labels("v", n), std::set<Edge>{}); }

namespace {

// N(a) is contained in N[b].
bool open_in_closed(const Graph& g, std::size_t a, std::size_t b) {
  for (std::size_t w = 0; w < g.vertex_count(); ++w)
    if (g.adjacent(a, w) && w != b && !g.adjacent(b, w)) return false;
  return true;
}

}  // namespace

CoherentPartition coherent_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> related(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    related[a][a] = true;
    for (std::size_t b = a + 1; b < n; ++b)
      related[a][b] = related[b][a] = open_in_closed(g, a, b) && open_in_closed(g, b, a);
  }

  CoherentPartition p;
  p.class_of.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (p.class_of[a] != n) continue;
    const std::size_t c = p.classes.size();
    p.classes.emplace_back();
    for (std::size_t b = a; b < n; ++b)
      if (related[a][b]) {
        if (p.class_of[b] != n) throw InvariantViolation("coherence relation is not transitive");
        p.class_of[b] = c;
        p.classes[c].push_back(b);
      }
  }
  // Every pair inside a class must itself be related.
  for (const auto& cls : p.classes)
    for (std::size_t x : cls)
      for (std::size_t y : cls)
        if (!related[x][y]) throw InvariantViolation("coherence relation is not transitive");

  p.internal_edges.resize(p.classes.size());
  for (const auto& [a, b] : g.edges()) {
    const std::size_t ca = p.class_of[a];
    const std::size_t cb = p.class_of[b];
    if (ca == cb)
      p.internal_edges[ca].push_back({a, b});
    else
      p.pair_edges.insert({std::min(ca, cb), std::max(ca, cb)});
  }
  return p;
}

Json to_json(const CoherentPartition& p, const Graph& g) {
  Json classes = Json::array();
  for (const auto& cls : p.classes) {
    Json members = Json::array();
    for (std::size_t v : cls) members.push_back(g.label(v));
    classes.push_back(members);
  }
  Json pairs = Json::array();
  for (const auto& [a, b] : p.pair_edges) pairs.push_back({a, b});
  Json internal = Json::object();
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    Json list = Json::array();
    for (const auto& [a, b] : p.internal_edges[c]) list.push_back({g.label(a), g.label(b)});
    internal[std::to_string(c)] = list;
  }
  Json out;
  out["classes"] = classes;
  out["pair_edges"] = pairs;
  out["internal_edges"] = internal;
  return out;
}

}  // namespace anosograph
