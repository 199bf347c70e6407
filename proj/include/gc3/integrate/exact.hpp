#pragma once

#include "gc3/exact/rational.hpp"
#include "gc3/graph/graph.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gc3 {

/// q·π^{p/2}.
struct HalfPiExact {
  Rational q = 1;
  long p = 0;

  double value() const { return q.get_d() * std::pow(std::numbers::pi, 0.5 * double(p)); }

  std::string to_string() const {
    if (p == 0) return q.get_str();
    std::string pi = p == 2 ? "pi" : (p % 2 ? "pi^(" + std::to_string(p) + "/2)" : "pi^" + std::to_string(p / 2));
    return q.get_str() + "*" + pi;
  }

  friend HalfPiExact operator*(const HalfPiExact& a, const HalfPiExact& b) { return {a.q * b.q, a.p + b.p}; }
  friend HalfPiExact operator/(const HalfPiExact& a, const HalfPiExact& b) {
    if (is_zero(b.q)) throw std::domain_error("division by zero");
    return {a.q / b.q, a.p - b.p};
  }
  friend bool operator==(const HalfPiExact& a, const HalfPiExact& b) {
    if (is_zero(a.q) || is_zero(b.q)) return is_zero(a.q) && is_zero(b.q);
    return a.q == b.q && a.p == b.p;
  }
};

/// True for 1/2, 1, 3/2, ...
inline bool positive_half_integer(const Rational& a) {
  return sgn(a) > 0 && (a.get_den() == 1 || a.get_den() == 2);
}

/// Γ(a) for a positive half-integer a; nullopt otherwise (pole or not a half-integer).
inline std::optional<HalfPiExact> gamma_half(const Rational& a) {
  if (!positive_half_integer(a)) return std::nullopt;
  if (a.get_den() == 1) {
    unsigned long n = a.get_num().get_ui();
    return HalfPiExact{Rational(factorial(unsigned(n - 1))), 0};
  }
  // Γ(k + 1/2) = (2k)! / (4^k k!) · √π
  unsigned long k = Rational(a - Rational(1, 2)).get_num().get_ui();
  Integer four_k = 1;
  for (unsigned long i = 0; i < k; ++i) four_k *= 4;
  return HalfPiExact{Rational(factorial(unsigned(2 * k))) / Rational(four_k * factorial(unsigned(k))), 1};
}

/// Massless one-loop propagator with indices n1, n2 in dimension D, measure d^Dq/π^{D/2}, |p| = 1.
inline std::optional<HalfPiExact> bubble(const Rational& n1, const Rational& n2, const Rational& dim) {
  Rational h = dim / 2;
  auto a = gamma_half(h - n1), b = gamma_half(h - n2), c = gamma_half(n1 + n2 - h);
  auto d = gamma_half(n1), e = gamma_half(n2), f = gamma_half(dim - n1 - n2);
  if (!a || !b || !c || !d || !e || !f) return std::nullopt;
  return (*a * *b * *c) / (*d * *e * *f);
}

/// Reduces a two-point graph (external momentum entering at `source`, leaving at
/// `sink`) by series and parallel merges until a single source-sink edge is left.
/// Indices must be half-integers; nullopt when the graph is not series-parallel
/// reducible or a Γ-pole shows up.
inline std::optional<HalfPiExact> series_parallel_reduce(const HalfEdgeGraph& g, std::vector<Rational> index,
                                                         const Rational& dim, Vertex source, Vertex sink) {
  if (index.size() != g.edge_count()) throw std::invalid_argument("one index per edge required");
  if (source == sink || source >= g.vertex_count || sink >= g.vertex_count)
    throw std::invalid_argument("source and sink must be distinct vertices");
  for (const auto& n : index)
    if (!positive_half_integer(n)) return std::nullopt;
  struct Edge {
    Vertex a, b;
    Rational n;
  };
  std::vector<Edge> edges;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (g.self_loop(e)) return std::nullopt;
    edges.push_back({g.endpoint(e, 0), g.endpoint(e, 1), index[e]});
  }
  HalfPiExact value;
  auto same_pair = [](const Edge& x, const Edge& y) {
    return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < edges.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < edges.size() && !changed; ++j) {
        if (!same_pair(edges[i], edges[j])) continue;
        auto b = bubble(edges[i].n, edges[j].n, dim);
        if (!b) return std::nullopt;
        value = value * *b;
        edges[i].n = edges[i].n + edges[j].n - dim / 2;
        if (!positive_half_integer(edges[i].n)) return std::nullopt;
        edges.erase(edges.begin() + long(j));
        changed = true;
      }
    if (changed) continue;
    for (Vertex v = 0; v < g.vertex_count && !changed; ++v) {
      if (v == source || v == sink) continue;
      std::vector<std::size_t> at;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].a == v || edges[i].b == v) at.push_back(i);
      if (at.empty()) continue;
      if (at.size() != 2) {
        if (at.size() == 1) return std::nullopt;  // dangling line: scaleless
        continue;
      }
      Edge& x = edges[at[0]];
      const Edge& y = edges[at[1]];
      Vertex u = x.a == v ? x.b : x.a, w = y.a == v ? y.b : y.a;
      x = {u, w, x.n + y.n};
      edges.erase(edges.begin() + long(at[1]));
      changed = true;
    }
  }
  if (edges.size() != 1) return std::nullopt;
  const Edge& last = edges.front();
  if (!((last.a == source && last.b == sink) || (last.a == sink && last.b == source))) return std::nullopt;
  return value;
}

/// ∫ Π x_i^{n_i−1} Ω_N / Ψ_G^{D/2} over the open simplex, through the propagator of G∖e.
/// Requires Σ n_i = ℓ(G)·D/2; nullopt when G∖e is not series-parallel.
inline std::optional<HalfPiExact> cut_edge_integral(const HalfEdgeGraph& g, EdgeIndex e,
                                                    const std::vector<Rational>& index, const Rational& dim) {
  if (index.size() != g.edge_count() || e >= g.edge_count()) throw std::invalid_argument("bad cut edge");
  Rational total = 0;
  for (const auto& n : index) total += n;
  if (total != Rational(g.loop_number()) * dim / 2) throw std::invalid_argument("integrand is not projective");
  std::vector<std::pair<Vertex, Vertex>> rest;
  std::vector<Rational> rest_index;
  for (EdgeIndex f = 0; f < g.edge_count(); ++f)
    if (f != e) {
      rest.emplace_back(g.endpoint(f, 0), g.endpoint(f, 1));
      rest_index.push_back(index[f]);
    }
  auto p = series_parallel_reduce(HalfEdgeGraph::from_edges(g.vertex_count, rest), rest_index, dim,
                                  g.endpoint(e, 0), g.endpoint(e, 1));
  if (!p) return std::nullopt;
  HalfPiExact prefactor;
  for (const auto& n : index) prefactor = prefactor * *gamma_half(n);
  return *p * prefactor / *gamma_half(dim / 2);
}

/// I_{D_{2i+1}}(1) for the dipole orientation with numerator (−1)^i (2i)!/(2^i i!)·(x₁⋯x_{2i+1})^{i−1}:
/// the prefactor times Γ(1/2)^{2i+1}/Γ(i+1/2), over (−2π)^i.
inline Rational dipole_exact(unsigned i) {
  if (i == 0) throw std::invalid_argument("dipole index must be at least 1");
  Rational c = Rational(factorial(2 * i)) / Rational(Integer(1) << i) / Rational(factorial(i));
  if (i % 2) c = -c;
  HalfPiExact j;
  for (unsigned t = 0; t < 2 * i + 1; ++t) j = j * *gamma_half(Rational(1, 2));
  j = j / *gamma_half(Rational(2 * i + 1, 2));
  HalfPiExact norm{Rational(Integer(i % 2 ? -1 : 1) << i), long(2 * i)};
  HalfPiExact r = HalfPiExact{c, 0} * j / norm;
  if (r.p != 0) throw std::logic_error("dipole integral is not rational");
  return r.q;
}

}  // namespace gc3
