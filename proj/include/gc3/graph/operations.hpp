#pragma once

#include "gc3/exact/dense.hpp"
#include "gc3/exact/rational.hpp"
#include "gc3/graph/graph.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace gc3 {

namespace detail {

inline int move_to_front_sign(std::size_t pa, std::size_t pb) {
  // moving the vertex at position pa to the front, then the one at pb right after it
  std::size_t pb_after = pb < pa ? pb + 1 : pb;
  return ((pa + pb_after - 1) % 2) ? -1 : 1;
}

inline OrientedGraph with_sign(OrientedGraph g, int sign) { return sign < 0 ? g.negated() : g; }

}  // namespace detail

/// (G,o)/e: tail and head of e move to the front of the vertex order and merge
/// into the first vertex; the other edges keep their order and directions.
inline OrientedGraph contract_edge(const OrientedGraph& g, EdgeIndex e) {
  if (e >= g.edge_count()) throw GraphError("edge index out of range");
  if (g.graph.self_loop(e)) throw GraphError("cannot contract a self-loop");
  Vertex t = g.tail(e), h = g.head(e);
  auto pos = g.positions();
  int sign = detail::move_to_front_sign(pos[t], pos[h]);

  std::vector<Vertex> relabel(g.vertex_count());
  relabel[t] = relabel[h] = 0;
  Vertex next = 1;
  for (Vertex v : g.orientation.vertex_order)
    if (v != t && v != h) relabel[v] = next++;

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (EdgeIndex f = 0; f < g.edge_count(); ++f)
    if (f != e) edges.emplace_back(relabel[g.tail(f)], relabel[g.head(f)]);
  return detail::with_sign(OrientedGraph::from_edges(g.vertex_count() - 1, edges), sign);
}

/// Edge-induced subgraph with the orientation inherited from g (vertices in
/// g's order, same edge directions); `vertex_map` receives old -> new or UINT32_MAX.
inline OrientedGraph edge_subgraph(const OrientedGraph& g, const std::vector<EdgeIndex>& edges,
                                   std::vector<Vertex>* vertex_map = nullptr) {
  std::vector<char> used(g.vertex_count(), 0);
  for (EdgeIndex e : edges) {
    if (e >= g.edge_count()) throw GraphError("edge index out of range");
    used[g.tail(e)] = used[g.head(e)] = 1;
  }
  std::vector<Vertex> map(g.vertex_count(), UINT32_MAX);
  Vertex next = 0;
  for (Vertex v : g.orientation.vertex_order)
    if (used[v]) map[v] = next++;
  std::vector<std::pair<Vertex, Vertex>> out;
  for (EdgeIndex e : edges) out.emplace_back(map[g.tail(e)], map[g.head(e)]);
  if (vertex_map) *vertex_map = map;
  return OrientedGraph::from_edges(next, out);
}

struct SubgraphQuotient {
  OrientedGraph subgraph;
  OrientedGraph quotient;
};

/// The canonical pair γ ⊗ G/γ: γ inherits g's vertex order and edge
/// directions, the quotient has v* first and carries the sign of moving the
/// vertices of γ to the front.
inline SubgraphQuotient subgraph_quotient(const OrientedGraph& g, const std::vector<EdgeIndex>& gamma) {
  if (gamma.empty() || gamma.size() >= g.edge_count()) throw GraphError("subgraph must be non-empty and proper");
  std::vector<char> in_gamma(g.edge_count(), 0);
  for (EdgeIndex e : gamma) {
    if (e >= g.edge_count() || in_gamma[e]) throw GraphError("invalid subgraph edge list");
    in_gamma[e] = 1;
  }
  std::vector<Vertex> map;
  SubgraphQuotient out;
  out.subgraph = edge_subgraph(g, gamma, &map);

  std::vector<Vertex> seq;  // new order expressed as old positions
  auto pos = g.positions();
  std::vector<Vertex> relabel(g.vertex_count());
  Vertex next = 1;
  for (Vertex v : g.orientation.vertex_order)
    if (map[v] != UINT32_MAX) {
      seq.push_back(Vertex(pos[v]));
      relabel[v] = 0;
    }
  for (Vertex v : g.orientation.vertex_order)
    if (map[v] == UINT32_MAX) {
      seq.push_back(Vertex(pos[v]));
      relabel[v] = next++;
    }
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) sign = -sign;

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (!in_gamma[e]) edges.emplace_back(relabel[g.tail(e)], relabel[g.head(e)]);
  out.quotient = detail::with_sign(OrientedGraph::from_edges(next, edges), sign);
  return out;
}

/// Subdivides edge e: e now ends at a new last vertex, followed by a new last edge to the old head.
inline OrientedGraph subdivide_edge(const OrientedGraph& g, EdgeIndex e) {
  auto n = Vertex(g.vertex_count());
  auto edges = g.directed_edges();
  Vertex head = edges.at(e).second;
  edges[e].second = n;
  edges.emplace_back(n, head);
  OrientedGraph out = OrientedGraph::from_edges(n + 1, edges);
  std::vector<Vertex> order = g.orientation.vertex_order;
  order.push_back(n);
  out.orientation.vertex_order = order;
  return out;
}

/// Integer m×ℓ matrix of cycles, column j = C_{j+1}, rows indexed by edges with
/// their oriented directions; `certificate` is det A for A = (C…, P_2…P_n).
struct CycleBasisMatrix {
  std::size_t edges = 0;
  std::size_t loops = 0;
  std::vector<std::vector<long>> entries;  // entries[e][j]
  Integer certificate = 0;

  long operator()(std::size_t e, std::size_t j) const { return entries[e][j]; }

  std::vector<long> column(std::size_t j) const {
    std::vector<long> c(edges);
    for (std::size_t e = 0; e < edges; ++e) c[e] = entries[e][j];
    return c;
  }

  static CycleBasisMatrix from_columns(std::size_t m, const std::vector<std::vector<long>>& cols) {
    CycleBasisMatrix c;
    c.edges = m;
    c.loops = cols.size();
    c.entries.assign(m, std::vector<long>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t e = 0; e < m; ++e) c.entries[e][j] = cols[j].at(e);
    return c;
  }
};

namespace detail {

/// Signed tree paths P_v from the root to each vertex, as 1-chains in oriented edge coordinates.
inline std::vector<std::vector<long>> tree_paths(const OrientedGraph& g, Vertex root, std::vector<char>& tree_edge) {
  std::size_t n = g.vertex_count(), m = g.edge_count();
  std::vector<std::vector<long>> path(n);
  std::vector<char> seen(n, 0);
  tree_edge.assign(m, 0);
  path[root].assign(m, 0);
  seen[root] = 1;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (EdgeIndex e = EdgeIndex(m); e-- > 0;) {
      Vertex a = g.tail(e), b = g.head(e);
      if (a == b) continue;
      Vertex other;
      long dir;
      if (a == u && !seen[b]) {
        other = b;
        dir = 1;
      } else if (b == u && !seen[a]) {
        other = a;
        dir = -1;
      } else {
        continue;
      }
      seen[other] = 1;
      tree_edge[e] = 1;
      path[other] = path[u];
      path[other][e] += dir;
      queue.push_back(other);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) throw GraphError("cycle basis requires a connected graph");
  return path;
}

inline Integer basis_certificate(const OrientedGraph& g, const std::vector<std::vector<long>>& cycles,
                                 const std::vector<std::vector<long>>& paths) {
  std::size_t m = g.edge_count();
  Matrix<Rational> a = zero_matrix<Rational>(m, m);
  std::size_t col = 0;
  for (const auto& c : cycles) {
    for (std::size_t e = 0; e < m; ++e) a[e][col] = c[e];
    ++col;
  }
  for (std::size_t i = 1; i < g.vertex_count(); ++i) {
    const auto& p = paths[g.orientation.vertex_order[i]];
    for (std::size_t e = 0; e < m; ++e) a[e][col] = p[e];
    ++col;
  }
  if (col != m) throw GraphError("cycle basis has the wrong size");
  Rational d = rational_determinant(a);
  return d.get_num();
}

}  // namespace detail

/// Cycle basis compatible with the orientation of g: det A = +1.
inline CycleBasisMatrix oriented_cycle_basis(const OrientedGraph& g) {
  if (!g.graph.connected()) throw GraphError("cycle basis requires a connected graph");
  std::vector<char> tree;
  auto paths = detail::tree_paths(g, g.orientation.vertex_order[0], tree);
  std::vector<std::vector<long>> cycles;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (tree[e]) continue;
    std::vector<long> c(g.edge_count(), 0);
    for (std::size_t f = 0; f < c.size(); ++f) c[f] = paths[g.tail(e)][f] - paths[g.head(e)][f];
    c[e] += 1;
    cycles.push_back(std::move(c));
  }
  Integer det = detail::basis_certificate(g, cycles, paths);
  if (det == -1 && !cycles.empty()) {
    for (auto& x : cycles[0]) x = -x;
    det = 1;
  }
  if (det != 1) throw GraphError("cycle basis certificate failed");
  CycleBasisMatrix out = CycleBasisMatrix::from_columns(g.edge_count(), cycles);
  out.certificate = det;
  return out;
}

/// det A for an arbitrary cycle basis of g (±1 for a basis, 0 otherwise).
inline Integer cycle_basis_certificate(const OrientedGraph& g, const CycleBasisMatrix& c) {
  std::vector<char> tree;
  auto paths = detail::tree_paths(g, g.orientation.vertex_order[0], tree);
  std::vector<std::vector<long>> cols;
  for (std::size_t j = 0; j < c.loops; ++j) cols.push_back(c.column(j));
  return detail::basis_certificate(g, cols, paths);
}

/// True if every column of c is a cycle of g (boundary zero).
inline bool columns_are_cycles(const OrientedGraph& g, const CycleBasisMatrix& c) {
  if (c.edges != g.edge_count()) return false;
  for (std::size_t j = 0; j < c.loops; ++j) {
    std::vector<long> b(g.vertex_count(), 0);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      b[g.head(e)] += c(e, j);
      b[g.tail(e)] -= c(e, j);
    }
    for (long x : b)
      if (x) return false;
  }
  return true;
}

/// A 2-vertex cut {v,w} together with the edges of one side G₂.
struct WhitneyCut {
  Vertex v = 0, w = 0;
  std::vector<char> side;  // per edge: 1 if in G₂
};

inline long subgraph_loop_number(const HalfEdgeGraph& g, const std::vector<char>& side) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (side[e]) edges.emplace_back(g.endpoint(e, 0), g.endpoint(e, 1));
  HalfEdgeGraph sub = HalfEdgeGraph::from_edges(g.vertex_count, edges);
  // isolated vertices count as components; subtract them out
  std::size_t isolated = 0;
  auto val = sub.valences();
  for (auto d : val)
    if (!d) ++isolated;
  return long(sub.edge_count()) - long(g.vertex_count - isolated) + long(sub.components() - isolated);
}

/// Oriented Whitney flip: half-edges of G₂ at v move to w and vice versa,
/// orientation data kept and multiplied by (−1)^{ℓ(G₂)+1}.
inline OrientedGraph whitney_flip(const OrientedGraph& g, const WhitneyCut& cut) {
  const auto& gr = g.graph;
  if (cut.side.size() != gr.edge_count() || cut.v == cut.w || cut.v >= gr.vertex_count ||
      cut.w >= gr.vertex_count)
    throw GraphError("invalid Whitney cut");
  std::vector<char> touch1(gr.vertex_count, 0), touch2(gr.vertex_count, 0);
  std::size_t m2 = 0;
  for (EdgeIndex e = 0; e < gr.edge_count(); ++e) {
    auto& t = cut.side[e] ? touch2 : touch1;
    t[gr.endpoint(e, 0)] = t[gr.endpoint(e, 1)] = 1;
    m2 += cut.side[e] ? 1 : 0;
  }
  if (m2 == 0 || m2 == gr.edge_count()) throw GraphError("Whitney cut side must be a proper edge subset");
  for (Vertex u = 0; u < gr.vertex_count; ++u) {
    bool shared = touch1[u] && touch2[u];
    if (shared != (u == cut.v || u == cut.w)) throw GraphError("Whitney cut sides must meet exactly in {v,w}");
  }
  OrientedGraph out = g;
  for (EdgeIndex e = 0; e < gr.edge_count(); ++e) {
    if (!cut.side[e]) continue;
    for (unsigned s = 0; s < 2; ++s) {
      Vertex& x = out.graph.incidence[2 * e + s];
      if (x == cut.v)
        x = cut.w;
      else if (x == cut.w)
        x = cut.v;
    }
  }
  long l2 = subgraph_loop_number(gr, cut.side);
  return (l2 + 1) % 2 ? out.negated() : out;
}

/// Every 2-vertex cut {v,w} with every proper grouping of the bridges between them into G₂.
inline std::vector<WhitneyCut> whitney_cuts(const HalfEdgeGraph& g) {
  std::vector<WhitneyCut> out;
  std::size_t n = g.vertex_count, m = g.edge_count();
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = v + 1; w < n; ++w) {
      // group edges by connectivity of G − {v,w}; edges between v and w are their own groups
      std::vector<std::size_t> parent(n);
      for (std::size_t i = 0; i < n; ++i) parent[i] = i;
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (EdgeIndex e = 0; e < m; ++e) {
        Vertex a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        if (a == v || a == w || b == v || b == w) continue;
        parent[find(a)] = find(b);
      }
      std::vector<long> group(m, -1);
      std::vector<std::size_t> key_of;
      std::vector<std::size_t> root_group(n, SIZE_MAX);
      std::size_t groups = 0;
      for (EdgeIndex e = 0; e < m; ++e) {
        Vertex a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        Vertex inner = (a != v && a != w) ? a : b;
        if (inner == v || inner == w) {
          group[e] = long(groups++);
          continue;
        }
        auto r = find(inner);
        if (root_group[r] == SIZE_MAX) root_group[r] = groups++;
        group[e] = long(root_group[r]);
      }
      if (groups < 2 || groups > 16) continue;
      // every group must touch both v and w, else {v,w} is not a proper 2-separation for it
      std::vector<char> tv(groups, 0), tw(groups, 0);
      for (EdgeIndex e = 0; e < m; ++e)
        for (unsigned s = 0; s < 2; ++s) {
          if (g.endpoint(e, s) == v) tv[group[e]] = 1;
          if (g.endpoint(e, s) == w) tw[group[e]] = 1;
        }
      for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << groups); ++mask) {
        if (mask & 1) continue;  // G₂ never contains group 0, avoiding the mirrored duplicate
        bool ok1v = false, ok1w = false, ok2v = false, ok2w = false;
        for (std::size_t q = 0; q < groups; ++q) {
          bool in2 = (mask >> q) & 1;
          (in2 ? ok2v : ok1v) |= bool(tv[q]);
          (in2 ? ok2w : ok1w) |= bool(tw[q]);
        }
        if (!(ok1v && ok1w && ok2v && ok2w)) continue;
        WhitneyCut c;
        c.v = v;
        c.w = w;
        c.side.assign(m, 0);
        for (EdgeIndex e = 0; e < m; ++e) c.side[e] = (mask >> group[e]) & 1;
        out.push_back(std::move(c));
      }
    }
  return out;
}

/// True if deleting some vertex disconnects a connected graph (or the graph is disconnected).
inline bool has_cut_vertex(const HalfEdgeGraph& g) {
  if (!g.connected()) return true;
  std::size_t n = g.vertex_count;
  if (n <= 2) return false;
  for (Vertex x = 0; x < n; ++x) {
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      Vertex a = g.endpoint(e, 0), b = g.endpoint(e, 1);
      if (a != x && b != x) parent[find(a)] = find(b);
    }
    std::size_t roots = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (v != x && find(v) == v) ++roots;
    if (roots > 1) return true;
  }
  return false;
}

inline bool connected_without(const HalfEdgeGraph& g, const std::vector<char>& removed) {
  std::vector<std::size_t> parent(g.vertex_count);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (!removed[e]) parent[find(g.endpoint(e, 0))] = find(g.endpoint(e, 1));
  std::size_t roots = 0;
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (find(v) == v) ++roots;
  return roots == 1;
}

/// True if removing at most two edges disconnects the graph (bridges included).
inline bool has_two_edge_cut(const HalfEdgeGraph& g) {
  std::size_t m = g.edge_count();
  std::vector<char> removed(m, 0);
  for (EdgeIndex e = 0; e < m; ++e) {
    removed[e] = 1;
    if (!connected_without(g, removed)) return true;
    for (EdgeIndex f = e + 1; f < m; ++f) {
      removed[f] = 1;
      bool c = connected_without(g, removed);
      removed[f] = 0;
      if (!c) return true;
    }
    removed[e] = 0;
  }
  return false;
}

inline bool has_two_valent_vertex(const HalfEdgeGraph& g) {
  for (auto d : g.valences())
    if (d == 2) return true;
  return false;
}

/// Spanning trees as edge subsets (connected graphs, small sizes only).
inline std::vector<std::vector<EdgeIndex>> spanning_trees(const HalfEdgeGraph& g) {
  std::vector<std::vector<EdgeIndex>> out;
  std::size_t n = g.vertex_count, m = g.edge_count();
  if (n == 0) return out;
  std::vector<EdgeIndex> chosen;
  std::vector<std::size_t> parent(n);
  auto rec = [&](auto&& self, EdgeIndex start) -> void {
    if (chosen.size() + 1 == n) {
      out.push_back(chosen);
      return;
    }
    if (m - start < n - 1 - chosen.size()) return;
    for (EdgeIndex e = start; e < m; ++e) {
      for (std::size_t i = 0; i < n; ++i) parent[i] = i;
      auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
      };
      for (EdgeIndex f : chosen) parent[find(g.endpoint(f, 0))] = find(g.endpoint(f, 1));
      if (find(g.endpoint(e, 0)) == find(g.endpoint(e, 1))) continue;
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace gc3
