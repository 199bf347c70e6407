#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gc3 {

using Vertex = std::uint32_t;
using HalfEdge = std::uint32_t;
using EdgeIndex = std::uint32_t;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multigraph on vertices 0..n-1; edge e consists of the half-edges 2e and 2e+1.
struct HalfEdgeGraph {
  std::size_t vertex_count = 0;
  std::vector<Vertex> incidence;  // half-edge -> vertex

  static HalfEdgeGraph from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    HalfEdgeGraph g;
    g.vertex_count = n;
    g.incidence.reserve(2 * edges.size());
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw GraphError("edge endpoint out of range");
      g.incidence.push_back(a);
      g.incidence.push_back(b);
    }
    return g;
  }

  std::size_t edge_count() const { return incidence.size() / 2; }
  std::array<HalfEdge, 2> half_edges(EdgeIndex e) const { return {2 * e, 2 * e + 1}; }
  Vertex endpoint(EdgeIndex e, unsigned side) const { return incidence[2 * e + side]; }
  bool self_loop(EdgeIndex e) const { return incidence[2 * e] == incidence[2 * e + 1]; }

  bool has_self_loop() const {
    for (EdgeIndex e = 0; e < edge_count(); ++e)
      if (self_loop(e)) return true;
    return false;
  }

  std::vector<std::size_t> valences() const {
    std::vector<std::size_t> d(vertex_count, 0);
    for (Vertex v : incidence) ++d[v];
    return d;
  }

  std::vector<HalfEdge> half_edges_at(Vertex v) const {
    std::vector<HalfEdge> hs;
    for (HalfEdge h = 0; h < incidence.size(); ++h)
      if (incidence[h] == v) hs.push_back(h);
    return hs;
  }

  /// Component label per vertex; returns the number of components.
  std::size_t components(std::vector<std::size_t>* label = nullptr) const {
    std::vector<std::size_t> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (EdgeIndex e = 0; e < edge_count(); ++e) parent[find(endpoint(e, 0))] = find(endpoint(e, 1));
    std::vector<std::size_t> id(vertex_count, SIZE_MAX);
    std::size_t count = 0;
    std::vector<std::size_t> lab(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) {
      auto r = find(v);
      if (id[r] == SIZE_MAX) id[r] = count++;
      lab[v] = id[r];
    }
    if (label) *label = std::move(lab);
    return count;
  }

  bool connected() const { return vertex_count > 0 && components() == 1; }

  /// ℓ = m − n + c.
  long loop_number() const {
    return long(edge_count()) - long(vertex_count) + long(components());
  }

  /// GC₃ degree k = m − 3ℓ.
  long degree() const { return long(edge_count()) - 3 * loop_number(); }

  /// Symmetric multiplicity matrix; the diagonal counts self-loops.
  std::vector<std::vector<unsigned>> multiplicities() const {
    std::vector<std::vector<unsigned>> a(vertex_count, std::vector<unsigned>(vertex_count, 0));
    for (EdgeIndex e = 0; e < edge_count(); ++e) {
      Vertex u = endpoint(e, 0), v = endpoint(e, 1);
      ++a[u][v];
      if (u != v) ++a[v][u];
    }
    return a;
  }
};

/// Vertex order plus, per edge, which half-edge comes first (the tail).
struct Orientation {
  std::vector<Vertex> vertex_order;
  std::vector<std::uint8_t> first_half;
};

struct OrientedGraph {
  HalfEdgeGraph graph;
  Orientation orientation;

  /// Vertex order 0 < 1 < … and every edge directed from half-edge 2e to 2e+1.
  static OrientedGraph standard(HalfEdgeGraph g) {
    OrientedGraph og;
    og.orientation.vertex_order.resize(g.vertex_count);
    std::iota(og.orientation.vertex_order.begin(), og.orientation.vertex_order.end(), Vertex(0));
    og.orientation.first_half.assign(g.edge_count(), 0);
    og.graph = std::move(g);
    return og;
  }

  static OrientedGraph from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    return standard(HalfEdgeGraph::from_edges(n, edges));
  }

  std::size_t vertex_count() const { return graph.vertex_count; }
  std::size_t edge_count() const { return graph.edge_count(); }
  Vertex tail(EdgeIndex e) const { return graph.incidence[2 * e + orientation.first_half[e]]; }
  Vertex head(EdgeIndex e) const { return graph.incidence[2 * e + 1 - orientation.first_half[e]]; }

  std::vector<std::pair<Vertex, Vertex>> directed_edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (EdgeIndex e = 0; e < edge_count(); ++e) out.emplace_back(tail(e), head(e));
    return out;
  }

  /// Position of each vertex in the vertex order.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(vertex_count());
    for (std::size_t i = 0; i < orientation.vertex_order.size(); ++i) pos[orientation.vertex_order[i]] = i;
    return pos;
  }

  void validate() const {
    if (orientation.vertex_order.size() != graph.vertex_count) throw GraphError("vertex order size mismatch");
    if (orientation.first_half.size() != graph.edge_count()) throw GraphError("edge direction size mismatch");
    std::vector<char> seen(graph.vertex_count, 0);
    for (Vertex v : orientation.vertex_order) {
      if (v >= graph.vertex_count || seen[v]) throw GraphError("vertex order is not a permutation");
      seen[v] = 1;
    }
    for (Vertex v : graph.incidence)
      if (v >= graph.vertex_count) throw GraphError("incidence out of range");
  }

  /// Isomorphic representative (same element of GC₃) with identity vertex
  /// order and every edge stored tail-first; edge order is preserved.
  OrientedGraph normalized() const {
    auto pos = positions();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (EdgeIndex e = 0; e < edge_count(); ++e)
      edges.emplace_back(Vertex(pos[tail(e)]), Vertex(pos[head(e)]));
    return from_edges(vertex_count(), edges);
  }

  /// The same graph with the opposite orientation.
  OrientedGraph negated() const {
    OrientedGraph r = *this;
    if (edge_count() > 0)
      r.orientation.first_half[0] ^= 1;
    else if (vertex_count() >= 2)
      std::swap(r.orientation.vertex_order[0], r.orientation.vertex_order[1]);
    else
      throw GraphError("orientation of a single vertex cannot be negated");
    return r;
  }
};

/// Parses the block format "B0|B1|…": digit d in block i is an edge i → d.
inline OrientedGraph parse_adjacency(std::string_view text) {
  std::vector<std::string> blocks(1);
  for (char ch : text) {
    if (ch == '|')
      blocks.emplace_back();
    else if (ch >= '0' && ch <= '9')
      blocks.back().push_back(ch);
    else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n')
      continue;
    else
      throw GraphError(std::string("malformed adjacency string: ") + std::string(text));
  }
  if (text.find('|') == std::string_view::npos) throw GraphError("adjacency string without blocks");
  std::size_t n = blocks.size();
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (char ch : blocks[i]) {
      Vertex t = Vertex(ch - '0');
      if (t >= n) throw GraphError("adjacency target out of range in " + std::string(text));
      edges.emplace_back(Vertex(i), t);
    }
  return OrientedGraph::from_edges(n, edges);
}

/// Inverse of parse_adjacency for normalized graphs whose edges are listed
/// block by block; other graphs are first normalized and stably sorted by tail.
inline std::string to_adjacency(const OrientedGraph& g) {
  if (g.vertex_count() > 10) throw GraphError("adjacency format supports at most 10 vertices");
  OrientedGraph h = g.normalized();
  std::vector<std::string> blocks(h.vertex_count());
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) blocks[h.tail(e)].push_back(char('0' + h.head(e)));
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out.push_back('|');
    out += blocks[i];
  }
  return out;
}

/// True if the edges of a normalized graph appear block by block (tails non-decreasing).
inline bool block_ordered(const OrientedGraph& g) {
  OrientedGraph h = g.normalized();
  for (EdgeIndex e = 1; e < h.edge_count(); ++e)
    if (h.tail(e) < h.tail(e - 1)) return false;
  return true;
}

struct NamedGraph {
  std::string name;
  OrientedGraph graph;
};

/// One adjacency string per line, '#' comments, optional "name:" prefix.
inline std::vector<NamedGraph> parse_graph_list(std::string_view text) {
  std::vector<NamedGraph> out;
  std::size_t start = 0, lineno = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++lineno;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      if (end == text.size()) break;
      continue;
    }
    line = line.substr(first);
    line.erase(line.find_last_not_of(" \t\r") + 1);
    NamedGraph ng;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      ng.name = line.substr(0, colon);
      ng.name.erase(ng.name.find_last_not_of(" \t") + 1);
      line = line.substr(colon + 1);
    }
    try {
      ng.graph = parse_adjacency(line);
    } catch (const GraphError& err) {
      throw GraphError("line " + std::to_string(lineno) + ": " + err.what());
    }
    out.push_back(std::move(ng));
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace gc3
