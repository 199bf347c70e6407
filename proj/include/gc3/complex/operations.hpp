#pragma once

#include "gc3/complex/chain.hpp"
#include "gc3/exact/sparse_matrix.hpp"
#include "gc3/graph/enumerate.hpp"
#include "gc3/graph/operations.hpp"
#include "gc3/parallel.hpp"

#include <unordered_map>

namespace gc3 {

namespace detail {

/// Applies f to every generator (reference orientation) in parallel and sums
/// the scaled results in key order.
template <class F>
Chain map_generators(const Chain& c, F&& f, std::size_t jobs) {
  std::vector<std::pair<CanonicalKey, Rational>> items(c.terms().begin(), c.terms().end());
  std::vector<Chain> parts(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    parts[i] = f(reference_graph(items[i].first));
    parts[i] *= items[i].second;
  });
  Chain out;
  for (const auto& p : parts) out += p;
  return out;
}

}  // namespace detail

inline Chain boundary(const OrientedGraph& g) {
  Chain out;
  if (g.graph.has_self_loop()) return out;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) out.add(contract_edge(g, e), 1);
  return out;
}

inline Chain boundary(const Chain& c, std::size_t jobs = 1) {
  return detail::map_generators(c, [](const OrientedGraph& g) { return boundary(g); }, jobs);
}

/// G₁ ∘_ρ G₂ for a map rho from the half-edges at v to vertices of G₂.
/// Returns the graph and the sign of moving v to the front of G₁'s order.
inline std::pair<OrientedGraph, int> insert_at(const OrientedGraph& g1, Vertex v, const OrientedGraph& g2,
                                               const std::vector<std::pair<HalfEdge, Vertex>>& rho) {
  OrientedGraph a = g1.normalized(), b = g2.normalized();
  auto pos = g1.positions();
  Vertex vv = Vertex(pos[v]);  // v in the normalized labels
  std::size_t n2 = b.vertex_count();
  auto relabel = [&](Vertex u) { return Vertex(n2 + (u < vv ? u : u - 1)); };

  std::vector<std::pair<Vertex, Vertex>> edges = b.directed_edges();
  // normalized graphs store the tail at half-edge 2e and the head at 2e+1
  std::vector<Vertex> target(2 * a.edge_count(), UINT32_MAX);
  for (auto [h, w] : rho) {
    // h refers to g1's half-edges; translate to the normalized tail/head slot
    EdgeIndex e = h / 2;
    unsigned side = h % 2;
    unsigned slot = (side == g1.orientation.first_half[e]) ? 0 : 1;
    target[2 * e + slot] = w;
  }
  for (EdgeIndex e = 0; e < a.edge_count(); ++e) {
    Vertex t = a.tail(e), h = a.head(e);
    Vertex nt = t == vv ? target[2 * e] : relabel(t);
    Vertex nh = h == vv ? target[2 * e + 1] : relabel(h);
    if (nt == UINT32_MAX || nh == UINT32_MAX) throw ComplexError("insertion map does not cover H(v)");
    edges.emplace_back(nt, nh);
  }
  int sign = (vv % 2) ? -1 : 1;
  return {OrientedGraph::from_edges(n2 + a.vertex_count() - 1, edges), sign};
}

/// G₁ ∘ G₂ summed over all vertices v and all maps ρ: H(v) → V(G₂).
/// With skip_constant, maps with a single value are omitted (they cancel in the bracket).
inline Chain insertion(const OrientedGraph& g1, const OrientedGraph& g2, bool skip_constant = false) {
  Chain out;
  std::size_t n2 = g2.vertex_count();
  for (Vertex v = 0; v < g1.vertex_count(); ++v) {
    auto hs = g1.graph.half_edges_at(v);
    std::vector<std::pair<HalfEdge, Vertex>> rho(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) rho[i] = {hs[i], 0};
    std::vector<std::size_t> digits(hs.size(), 0);
    while (true) {
      bool constant = true;
      for (std::size_t i = 1; i < digits.size(); ++i) constant &= digits[i] == digits[0];
      if (!(skip_constant && constant)) {
        for (std::size_t i = 0; i < hs.size(); ++i) rho[i].second = Vertex(digits[i]);
        auto [g, sign] = insert_at(g1, v, g2, rho);
        out.add(g, sign);
      }
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == n2) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return out;
}

inline Chain insertion(const Chain& a, const Chain& b, bool skip_constant = false, std::size_t jobs = 1) {
  std::vector<std::pair<CanonicalKey, Rational>> ia(a.terms().begin(), a.terms().end());
  std::vector<std::pair<CanonicalKey, Rational>> ib(b.terms().begin(), b.terms().end());
  std::vector<Chain> parts(ia.size() * ib.size());
  parallel_for(parts.size(), jobs, [&](std::size_t idx) {
    const auto& [ka, ca] = ia[idx / ib.size()];
    const auto& [kb, cb] = ib[idx % ib.size()];
    parts[idx] = insertion(reference_graph(ka), reference_graph(kb), skip_constant);
    parts[idx] *= ca * cb;
  });
  Chain out;
  for (const auto& p : parts) out += p;
  return out;
}

namespace detail {

inline long homogeneous_degree(const Chain& c) {
  auto b = c.bidegree();
  return b ? b->degree : 0;
}

}  // namespace detail

/// [a, b] = a∘b − (−1)^{k_a k_b} b∘a.
inline Chain bracket(const Chain& a, const Chain& b, std::size_t jobs = 1) {
  if (a.zero() || b.zero()) return {};
  long ka = detail::homogeneous_degree(a), kb = detail::homogeneous_degree(b);
  Chain ab = insertion(a, b, false, jobs), ba = insertion(b, a, false, jobs);
  return ((ka * kb) % 2) ? ab + ba : ab - ba;
}

/// The bracket computed with the single-valued insertions dropped on both sides.
inline Chain bracket_without_constant_maps(const Chain& a, const Chain& b, std::size_t jobs = 1) {
  if (a.zero() || b.zero()) return {};
  long ka = detail::homogeneous_degree(a), kb = detail::homogeneous_degree(b);
  Chain ab = insertion(a, b, true, jobs), ba = insertion(b, a, true, jobs);
  return ((ka * kb) % 2) ? ab + ba : ab - ba;
}

inline OrientedGraph dipole(std::size_t m) {
  return OrientedGraph::from_edges(2, std::vector<std::pair<Vertex, Vertex>>(m, {0, 1}));
}

/// δ = ½[·, D₁].
inline Chain coboundary(const Chain& c, std::size_t jobs = 1) {
  Chain out;
  for (auto& [bd, part] : c.homogeneous_parts()) out += bracket(part, Chain::of(dipole(1)), jobs);
  return out * Rational(1, 2);
}

inline Chain coboundary(const OrientedGraph& g) { return coboundary(Chain::of(g)); }

/// ⟨q, g⟩ = Σ_G q_G g_G |Aut G|.
inline Rational pairing(const Chain& q, const Chain& g) {
  Rational s = 0;
  const Chain& small = q.size() <= g.size() ? q : g;
  const Chain& large = q.size() <= g.size() ? g : q;
  for (const auto& [k, c] : small.terms()) {
    Rational d = large.coefficient(k);
    if (!is_zero(d)) s += c * d * Rational(automorphism_count(k));
  }
  return s;
}

/// Chain q with ⟨q, G⟩ = value for an oriented graph G, i.e. the dual basis vector scaled.
inline Chain dual_element(const OrientedGraph& g, const Rational& value) {
  auto ks = canonical_key(g);
  if (ks.sign == 0) return {};
  return Chain::of_key(ks.key, Rational(ks.sign) * value / Rational(automorphism_count(ks.key)));
}

inline std::size_t graded_dimension(long loops, long degree, EnumerationLimits limits = {}) {
  return graded_basis(loops, degree, limits).size();
}

/// Matrix of ∂ (side = chain) or δ (side = cochain) from gr_{ℓ,k} into the adjacent degree.
enum class Side { chain, cochain };

inline SparseRationalMatrix differential_matrix(long loops, long degree, Side side, EnumerationLimits limits = {},
                                                std::size_t jobs = 1) {
  long target = side == Side::chain ? degree - 1 : degree + 1;
  auto src = graded_basis(loops, degree, limits);
  auto dst = graded_basis(loops, target, limits);
  std::unordered_map<CanonicalKey, std::size_t> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);
  SparseRationalMatrix m(dst.size(), src.size());
  std::vector<Chain> images(src.size());
  parallel_for(src.size(), jobs, [&](std::size_t j) {
    Chain g = Chain::of_key(src[j]);
    images[j] = side == Side::chain ? boundary(g) : coboundary(g);
  });
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [k, c] : images[j].terms()) {
      auto it = index.find(k);
      if (it == index.end()) throw ComplexError("differential leaves the graded basis");
      m.set(it->second, j, c);
    }
  return m;
}

inline std::size_t homology_dimension(long loops, long degree, Side side, EnumerationLimits limits = {},
                                      std::size_t jobs = 1) {
  std::size_t dim = graded_dimension(loops, degree, limits);
  if (dim == 0) return 0;
  long into = side == Side::chain ? degree + 1 : degree - 1;
  std::size_t out_rank = rank(differential_matrix(loops, degree, side, limits, jobs));
  std::size_t in_rank = rank(differential_matrix(loops, into, side, limits, jobs));
  return dim - out_rank - in_rank;
}

/// Ξ = Σ_{1≤i, 2i≤max_loops} D_{2i+1} / (2·(2i+1)!).
inline Chain dipole_sum(long max_loops) {
  Chain xi;
  for (long i = 1; 2 * i <= max_loops; ++i)
    xi.add(dipole(std::size_t(2 * i + 1)), Rational(1) / Rational(2 * factorial(unsigned(2 * i + 1))));
  return xi;
}

/// δΞ + ½[Ξ, Ξ] truncated at loop number max_loops.
inline Chain maurer_cartan_residual(long max_loops, std::size_t jobs = 1) {
  Chain xi = dipole_sum(max_loops);
  Chain out = coboundary(xi, jobs);
  auto parts = xi.homogeneous_parts();
  for (const auto& [bi, a] : parts)
    for (const auto& [bj, b] : parts)
      if (bi.first + bj.first <= max_loops) out += bracket(a, b, jobs) * Rational(1, 2);
  return out.truncated(max_loops);
}

/// True iff ⟨q, ∂H⟩ = 0 for every H in bidegree (ℓ, k+1).
inline bool cocycle_check(const Chain& q, long loops, long degree, EnumerationLimits limits = {},
                          std::size_t jobs = 1) {
  auto hs = graded_basis(loops, degree + 1, limits);
  std::vector<char> ok(hs.size(), 1);
  parallel_for(hs.size(), jobs, [&](std::size_t i) { ok[i] = is_zero(pairing(q, boundary(Chain::of_key(hs[i])))); });
  for (char x : ok)
    if (!x) return false;
  return true;
}

}  // namespace gc3
