#pragma once

#include "gc3/exact/rational.hpp"
#include "gc3/graph/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace gc3 {

/// Isomorphism class of an unoriented multigraph: vertex count followed by
/// the upper triangle (with diagonal) of the canonically relabeled
/// multiplicity matrix.
struct CanonicalKey {
  std::string bytes;

  std::size_t vertex_count() const { return bytes.empty() ? 0 : std::size_t(std::uint8_t(bytes[0])); }

  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) { return a.bytes == b.bytes; }
  friend bool operator!=(const CanonicalKey& a, const CanonicalKey& b) { return a.bytes != b.bytes; }
  friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) { return a.bytes < b.bytes; }
};

}  // namespace gc3

template <>
struct std::hash<gc3::CanonicalKey> {
  std::size_t operator()(const gc3::CanonicalKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};

namespace gc3 {

using Permutation = std::vector<Vertex>;

/// Sign of a permutation given as an image list.
inline int permutation_sign(const std::vector<Vertex>& p) {
  std::vector<char> seen(p.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

struct Labeling {
  CanonicalKey key;
  Permutation position;             // vertex -> canonical position
  std::vector<Permutation> generators;  // vertex automorphisms (original labels)
  bool odd = false;                 // some automorphism reverses orientations
};

namespace detail {

using Mult = std::vector<std::vector<unsigned>>;

class LabelSearch {
 public:
  explicit LabelSearch(const Mult& a) : a_(a), n_(a.size()) {}

  Labeling run() {
    std::vector<int> colors(n_, 0);
    std::vector<std::size_t> loops(n_), val(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      loops[v] = a_[v][v];
      val[v] = 2 * a_[v][v];
      for (std::size_t u = 0; u < n_; ++u)
        if (u != v) val[v] += a_[v][u];
    }
    std::vector<std::pair<std::size_t, std::size_t>> init(n_);
    for (std::size_t v = 0; v < n_; ++v) init[v] = {val[v], loops[v]};
    colors = rank_by(init);
    refine(colors);
    std::vector<Vertex> path;
    search(colors, path);

    Labeling out;
    out.key.bytes = best_str_;
    out.position.assign(best_perm_.begin(), best_perm_.end());
    out.generators = gens_;
    bool has_loop = false;
    for (std::size_t v = 0; v < n_; ++v) has_loop |= a_[v][v] > 0;
    out.odd = has_loop;
    for (const auto& g : gens_) out.odd |= automorphism_sign(g) < 0;
    return out;
  }

  int automorphism_sign(const Permutation& g) const {
    int sign = permutation_sign(g);
    unsigned flips = 0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (g[u] > g[v]) flips += a_[u][v];
    return (flips % 2) ? -sign : sign;
  }

 private:
  template <class T>
  static std::vector<int> rank_by(const std::vector<T>& keys) {
    std::vector<T> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      out[i] = int(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return out;
  }

  static int count_colors(const std::vector<int>& c) {
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  void refine(std::vector<int>& colors) const {
    int k = count_colors(colors);
    while (true) {
      std::vector<std::vector<unsigned>> sig(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        std::vector<unsigned> s;
        s.push_back(unsigned(colors[v]));
        std::vector<std::pair<unsigned, unsigned>> nb;
        for (std::size_t u = 0; u < n_; ++u)
          if (u != v && a_[v][u]) nb.emplace_back(unsigned(colors[u]), a_[v][u]);
        std::sort(nb.begin(), nb.end());
        for (auto [c, m] : nb) {
          s.push_back(c);
          s.push_back(m);
        }
        sig[v] = std::move(s);
      }
      auto next = rank_by(sig);
      int k2 = count_colors(next);
      colors = std::move(next);
      if (k2 == k) return;
      k = k2;
    }
  }

  std::string leaf_string(const std::vector<int>& colors, std::vector<Vertex>& perm) const {
    perm.assign(n_, 0);
    std::vector<std::size_t> inv(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      perm[v] = Vertex(colors[v]);
      inv[colors[v]] = v;
    }
    std::string s;
    s.push_back(char(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) s.push_back(char(a_[inv[i]][inv[j]]));
    return s;
  }

  Permutation compose_to(const Permutation& from, const Permutation& to) const {
    // v -> from^{-1}(to(v))
    Permutation inv(n_), g(n_);
    for (std::size_t v = 0; v < n_; ++v) inv[from[v]] = Vertex(v);
    for (std::size_t v = 0; v < n_; ++v) g[v] = inv[to[v]];
    return g;
  }

  std::vector<std::size_t> orbits_fixing(const std::vector<Vertex>& prefix) const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : gens_) {
      bool fixes = true;
      for (Vertex p : prefix)
        if (g[p] != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (std::size_t v = 0; v < n_; ++v) parent[find(v)] = find(g[v]);
    }
    std::vector<std::size_t> orb(n_);
    for (std::size_t v = 0; v < n_; ++v) orb[v] = find(v);
    return orb;
  }

  static std::size_t common_prefix(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  // Returns the depth to unwind to; path.size() means "continue normally".
  std::size_t search(const std::vector<int>& colors, std::vector<Vertex>& path) {
    int k = count_colors(colors);
    if (std::size_t(k) == n_) return leaf(colors, path);

    std::vector<std::size_t> cell_size(k, 0);
    for (int c : colors) ++cell_size[c];
    int target = 0;
    while (cell_size[target] == 1) ++target;
    std::vector<Vertex> cell;
    for (std::size_t v = 0; v < n_; ++v)
      if (colors[v] == target) cell.push_back(Vertex(v));

    std::vector<Vertex> tried;
    std::size_t depth = path.size();
    for (Vertex v : cell) {
      auto orb = orbits_fixing(path);
      bool skip = false;
      for (Vertex t : tried)
        if (orb[t] == orb[v]) {
          skip = true;
          break;
        }
      if (skip) continue;
      tried.push_back(v);

      std::vector<std::pair<int, int>> keyed(n_);
      for (std::size_t u = 0; u < n_; ++u)
        keyed[u] = {colors[u], (colors[u] == target && u != v) ? 1 : 0};
      auto child = rank_by(keyed);
      refine(child);
      path.push_back(v);
      std::size_t jump = search(child, path);
      path.pop_back();
      if (jump < depth) return jump;
    }
    return depth;
  }

  std::size_t leaf(const std::vector<int>& colors, const std::vector<Vertex>& path) {
    std::vector<Vertex> perm;
    std::string s = leaf_string(colors, perm);
    if (!have_first_) {
      have_first_ = true;
      first_str_ = best_str_ = s;
      first_perm_ = best_perm_ = perm;
      first_path_ = best_path_ = path;
      return path.size();
    }
    if (s == first_str_) {
      gens_.push_back(compose_to(first_perm_, perm));
      return common_prefix(path, first_path_);
    }
    if (s == best_str_) {
      gens_.push_back(compose_to(best_perm_, perm));
      return common_prefix(path, best_path_);
    }
    if (s > best_str_) {
      best_str_ = s;
      best_perm_ = perm;
      best_path_ = path;
    }
    return path.size();
  }

  const Mult& a_;
  std::size_t n_;
  bool have_first_ = false;
  std::string first_str_, best_str_;
  std::vector<Vertex> first_perm_, best_perm_, first_path_, best_path_;
  std::vector<Permutation> gens_;
};

}  // namespace detail

/// Canonical labeling of a multiplicity matrix (diagonal = self-loops).
inline Labeling canonical_labeling(const std::vector<std::vector<unsigned>>& mult) {
  if (mult.size() > 255) throw GraphError("graph too large for canonical labeling");
  for (const auto& row : mult)
    for (unsigned m : row)
      if (m > 255) throw GraphError("edge multiplicity too large for canonical labeling");
  return detail::LabelSearch(mult).run();
}

inline Labeling canonical_labeling(const HalfEdgeGraph& g) { return canonical_labeling(g.multiplicities()); }

/// Sign of a vertex automorphism on orientations of the graph with multiplicities `mult`.
inline int vertex_automorphism_sign(const std::vector<std::vector<unsigned>>& mult, const Permutation& g) {
  return detail::LabelSearch(mult).automorphism_sign(g);
}

/// Stored reference representative of a class: canonical vertex order and
/// every edge directed from the smaller to the larger canonical label,
/// edges sorted lexicographically by (tail, head).
inline OrientedGraph reference_graph(const CanonicalKey& key) {
  std::size_t n = key.vertex_count();
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t idx = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      unsigned m = std::uint8_t(key.bytes.at(idx++));
      for (unsigned t = 0; t < m; ++t) edges.emplace_back(Vertex(i), Vertex(j));
    }
  return OrientedGraph::from_edges(n, edges);
}

struct KeyedSign {
  CanonicalKey key;
  int sign = 0;  // −1, 0 (odd automorphism or self-loop) or +1
};

/// Orientation sign of g relative to the reference orientation of its class.
inline int orientation_sign(const OrientedGraph& g, const Permutation& position) {
  std::vector<Vertex> seq;
  seq.reserve(g.vertex_count());
  for (Vertex v : g.orientation.vertex_order) seq.push_back(position[v]);
  int sign = permutation_sign(seq);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (position[g.tail(e)] > position[g.head(e)]) sign = -sign;
  return sign;
}

inline KeyedSign canonical_key(const OrientedGraph& g) {
  Labeling lab = canonical_labeling(g.graph);
  KeyedSign out;
  out.key = std::move(lab.key);
  out.sign = lab.odd ? 0 : orientation_sign(g, lab.position);
  return out;
}

/// Per-class data shared by all callers: odd flag and |Aut_V|.
struct ClassInfo {
  bool odd = false;
  Integer vertex_automorphisms = 1;
  Integer kernel_order = 1;  // |K_G|
  Integer automorphism_count() const { return vertex_automorphisms * kernel_order; }
};

/// |K_G| = Π_v d_v!·2^{d_v} · Π_{v<w} d_{vw}!
inline Integer kernel_order(const HalfEdgeGraph& g) {
  auto a = g.multiplicities();
  Integer k = 1;
  for (std::size_t v = 0; v < a.size(); ++v) {
    k *= factorial(a[v][v]) * pow(Integer(2), a[v][v]);
    for (std::size_t w = v + 1; w < a.size(); ++w) k *= factorial(a[v][w]);
  }
  return k;
}

/// Closure of a set of vertex permutations (the whole group), with a cap.
inline std::vector<Permutation> group_closure(std::size_t n, const std::vector<Permutation>& gens,
                                              std::size_t cap) {
  Permutation id(n);
  std::iota(id.begin(), id.end(), Vertex(0));
  std::set<Permutation> seen{id};
  std::vector<Permutation> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Permutation h(n);
      for (std::size_t v = 0; v < n; ++v) h[v] = g[elems[i][v]];
      if (seen.insert(h).second) {
        elems.push_back(h);
        if (elems.size() > cap) throw std::length_error("automorphism group exceeds cap");
      }
    }
  return elems;
}

class ClassRegistry {
 public:
  static ClassRegistry& instance() {
    static ClassRegistry r;
    return r;
  }

  ClassInfo info(const CanonicalKey& key) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    OrientedGraph ref = reference_graph(key);
    Labeling lab = canonical_labeling(ref.graph);
    ClassInfo ci;
    ci.odd = lab.odd;
    ci.kernel_order = kernel_order(ref.graph);
    ci.vertex_automorphisms = Integer(group_closure(ref.vertex_count(), lab.generators, 100000000).size());
    std::unique_lock lock(mutex_);
    table_.try_emplace(key, ci);
    return ci;
  }

 private:
  std::shared_mutex mutex_;
  std::unordered_map<CanonicalKey, ClassInfo> table_;
};

inline Integer automorphism_count(const CanonicalKey& key) {
  return ClassRegistry::instance().info(key).automorphism_count();
}

struct HalfEdgeAutomorphism {
  std::vector<HalfEdge> map;  // half-edge -> half-edge
  int sign = 1;
};

/// All automorphisms acting on half-edges, each with its orientation sign.
inline std::vector<HalfEdgeAutomorphism> automorphisms(const HalfEdgeGraph& g, std::size_t cap = 1000000) {
  Labeling lab = canonical_labeling(g);
  Integer total = Integer(0);
  auto group = group_closure(g.vertex_count, lab.generators, cap);
  Integer kg = kernel_order(g);
  total = kg * Integer(group.size());
  if (total > Integer(cap)) throw std::length_error("automorphism count exceeds cap");

  std::size_t m = g.edge_count();
  // bundles: unordered vertex pair -> edges in index order
  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeIndex>> bundles;
  for (EdgeIndex e = 0; e < m; ++e) {
    Vertex u = g.endpoint(e, 0), v = g.endpoint(e, 1);
    bundles[{std::min(u, v), std::max(u, v)}].push_back(e);
  }

  std::vector<HalfEdgeAutomorphism> out;
  for (const auto& sigma : group) {
    // For every bundle, enumerate bijections onto its image bundle and, for
    // self-loops, both half-edge orders.
    std::vector<std::pair<std::vector<EdgeIndex>, std::vector<EdgeIndex>>> parts;
    for (const auto& [uv, edges] : bundles) {
      Vertex a = sigma[uv.first], b = sigma[uv.second];
      parts.push_back({edges, bundles.at({std::min(a, b), std::max(a, b)})});
    }
    std::vector<HalfEdge> map(2 * m);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
      if (idx == parts.size()) {
        HalfEdgeAutomorphism aut;
        aut.map = map;
        int sign = permutation_sign(sigma);
        for (EdgeIndex e = 0; e < m; ++e)
          if (map[2 * e] % 2) sign = -sign;
        aut.sign = sign;
        out.push_back(std::move(aut));
        return;
      }
      const auto& [src, dst] = parts[idx];
      std::vector<EdgeIndex> perm = dst;
      std::sort(perm.begin(), perm.end());
      do {
        bool loops = g.self_loop(src[0]);
        std::size_t flips = loops ? (std::size_t(1) << src.size()) : 1;
        for (std::size_t f = 0; f < flips; ++f) {
          for (std::size_t t = 0; t < src.size(); ++t) {
            EdgeIndex e = src[t], d = perm[t];
            bool swap;
            if (loops)
              swap = (f >> t) & 1;
            else
              swap = sigma[g.endpoint(e, 0)] != g.endpoint(d, 0);
            map[2 * e] = 2 * d + (swap ? 1 : 0);
            map[2 * e + 1] = 2 * d + (swap ? 0 : 1);
          }
          rec(idx + 1);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(0);
  }
  return out;
}

}  // namespace gc3
