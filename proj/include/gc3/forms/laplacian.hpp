#pragma once

#include "gc3/exact/dense.hpp"
#include "gc3/exact/exterior.hpp"
#include "gc3/graph/operations.hpp"

#include <stdexcept>
#include <vector>

namespace gc3 {

class FormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fundamental cycles of a spanning forest; works for disconnected graphs and
/// self-loops. Columns are in edge-direction coordinates of g.
inline CycleBasisMatrix forest_cycle_basis(const OrientedGraph& g) {
  std::size_t n = g.vertex_count(), m = g.edge_count();
  std::vector<std::vector<long>> path(n);
  std::vector<char> seen(n, 0), tree(m, 0);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    path[root].assign(m, 0);
    std::vector<Vertex> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Vertex u = queue[qi];
      for (EdgeIndex e = 0; e < m; ++e) {
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
        tree[e] = 1;
        path[other] = path[u];
        path[other][e] += dir;
        queue.push_back(other);
      }
    }
  }
  std::vector<std::vector<long>> cycles;
  for (EdgeIndex e = 0; e < m; ++e) {
    if (tree[e]) continue;
    std::vector<long> c(m, 0);
    for (std::size_t f = 0; f < m; ++f) c[f] = path[g.tail(e)][f] - path[g.head(e)][f];
    c[e] += 1;
    cycles.push_back(std::move(c));
  }
  return CycleBasisMatrix::from_columns(m, cycles);
}

namespace detail {

inline void check_basis(const OrientedGraph& g, const CycleBasisMatrix& c) {
  if (!columns_are_cycles(g, c)) throw FormError("columns are not cycles of the graph");
  if (long(c.loops) != g.graph.loop_number()) throw FormError("cycle basis has the wrong size");
}

}  // namespace detail

/// Λ_C = Cᵀ diag(x) C with entries linear in x_1..x_m.
inline Matrix<Polynomial> dual_laplacian(const OrientedGraph& g, const CycleBasisMatrix& c) {
  detail::check_basis(g, c);
  std::size_t m = c.edges, l = c.loops;
  Matrix<Polynomial> lam(l, std::vector<Polynomial>(l, Polynomial(m)));
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t i = 0; i < l; ++i) {
      if (!c(e, i)) continue;
      for (std::size_t j = 0; j < l; ++j)
        if (c(e, j)) lam[i][j] += Polynomial::variable(m, e, Rational(c(e, i) * c(e, j)));
    }
  Matrix<Rational> ones(l, std::vector<Rational>(l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) ones[i][j] = lam[i][j].evaluate(std::vector<Rational>(m, Rational(1)));
  if (rational_determinant(ones) == 0) throw FormError("columns are not linearly independent");
  return lam;
}

/// dΛ_C as a matrix of constant 1-forms in dx_1..dx_m.
template <class E>
Matrix<E> laplacian_differential(const CycleBasisMatrix& c) {
  std::size_t m = c.edges, l = c.loops;
  Matrix<E> d(l, std::vector<E>(l));
  using Scalar = typename E::scalar_type;
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t i = 0; i < l; ++i) {
      if (!c(e, i)) continue;
      for (std::size_t j = 0; j < l; ++j) {
        if (!c(e, j)) continue;
        Scalar coeff;
        if constexpr (std::is_same_v<Scalar, Polynomial>)
          coeff = Polynomial(m, Rational(c(e, i) * c(e, j)));
        else
          coeff = Scalar(c(e, i) * c(e, j));
        d[i][j] += E::generator(unsigned(e), coeff);
      }
    }
  return d;
}

/// Ψ = det Λ for any cycle basis; 1 for a forest.
inline Polynomial symanzik(const OrientedGraph& g) {
  auto c = forest_cycle_basis(g);
  if (c.loops == 0) return Polynomial(g.edge_count(), Rational(1));
  Polynomial p = determinant(dual_laplacian(g, c));
  return p;
}

inline Polynomial symanzik(const HalfEdgeGraph& g) { return symanzik(OrientedGraph::standard(g)); }

/// Σ_T Π_{e∉T} x_e over spanning trees of a connected graph.
inline Polynomial spanning_tree_polynomial(const HalfEdgeGraph& g) {
  std::size_t m = g.edge_count();
  if (!g.connected()) throw FormError("spanning tree sum needs a connected graph");
  Polynomial out(m);
  for (const auto& t : spanning_trees(g)) {
    std::vector<char> in(m, 0);
    for (EdgeIndex e : t) in[e] = 1;
    Monomial mon;
    for (std::size_t e = 0; e < m; ++e)
      if (!in[e]) {
        mon.exp[e] = 1;
        ++mon.degree;
      }
    out.add_term(mon, Rational(1));
  }
  return out;
}

}  // namespace gc3
