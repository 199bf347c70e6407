#pragma once

#include "gc3/forms/graph_forms.hpp"
#include "gc3/graph/canonical.hpp"
#include "gc3/graph/operations.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gc3 {

struct PropertyOutcome {
  std::string graph, property;
  bool ok = false;
  std::string detail;
};

struct FormPropertyOptions {
  /// Symbolic φ∧φ and Pf² = det are done up to this many edges, pointwise above.
  std::size_t symbolic_edges = 6;
  /// Symbolic closedness, restriction and flips up to this many edges.
  std::size_t closed_edges = 9;
  std::size_t points = 2;
  std::uint64_t seed = 5;
};

namespace detail {

/// Λ(x), Λ(x)⁻¹ and dΛ as forms with scalar coefficients.
template <class F>
struct PointLaplacian {
  Matrix<F> lam, inv;
  Matrix<FlatForm<F>> d;
};

template <class F>
PointLaplacian<F> laplacian_at(const CycleBasisMatrix& c, const std::vector<F>& x) {
  PointLaplacian<F> p;
  std::size_t l = c.loops;
  p.lam = zero_matrix<F>(l, l);
  for (std::size_t e = 0; e < c.edges; ++e)
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) p.lam[i][j] += x[e] * F(c(e, i) * c(e, j));
  p.inv = l ? field_inverse(p.lam) : p.lam;
  p.d = laplacian_differential<FlatForm<F>>(c);
  return p;
}

inline std::vector<Rational> random_point(std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pick(1, 60);
  std::vector<Rational> x(m);
  for (auto& v : x) v = make_rational(pick(rng), pick(rng));
  return x;
}

/// Random ℓ×ℓ integer matrix with det = sign, built from elementary operations.
inline std::vector<std::vector<long>> random_unimodular(std::size_t l, int sign, std::mt19937_64& rng) {
  std::vector<std::vector<long>> p(l, std::vector<long>(l, 0));
  for (std::size_t i = 0; i < l; ++i) p[i][i] = 1;
  if (l == 0) return p;
  std::uniform_int_distribution<long> coeff(-2, 2);
  std::uniform_int_distribution<std::size_t> idx(0, l - 1);
  for (std::size_t t = 0; l > 1 && t < 3 * l; ++t) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    long f = coeff(rng);
    for (std::size_t r = 0; r < l; ++r) p[r][a] += f * p[r][b];
  }
  if (sign < 0)
    for (std::size_t r = 0; r < l; ++r) p[r][0] = -p[r][0];
  return p;
}

inline CycleBasisMatrix transform_basis(const CycleBasisMatrix& c, const std::vector<std::vector<long>>& p) {
  std::vector<std::vector<long>> cols(c.loops, std::vector<long>(c.edges, 0));
  for (std::size_t e = 0; e < c.edges; ++e)
    for (std::size_t j = 0; j < c.loops; ++j)
      for (std::size_t i = 0; i < c.loops; ++i) cols[j][e] += c(e, i) * p[i][j];
  return CycleBasisMatrix::from_columns(c.edges, cols);
}

inline CycleBasisMatrix drop_edge(const CycleBasisMatrix& c, EdgeIndex e) {
  CycleBasisMatrix r = c;
  r.entries.erase(r.entries.begin() + long(e));
  r.edges -= 1;
  return r;
}

/// Moves a form on m_part edges to the edges offset..offset+m_part−1 of an m-edge graph.
inline ProjectiveForm embed_form(const ProjectiveForm& f, std::size_t offset, std::size_t m) {
  std::vector<std::size_t> map(f.variables);
  for (std::size_t i = 0; i < f.variables; ++i) map[i] = i + offset;
  ProjectiveForm r;
  r.variables = m;
  r.s = f.s;
  r.base = f.base.rename(map, m);
  for (const auto& [set, c] : f.numerator.terms()) r.numerator.add(GeneratorSet(set) << offset, c.rename(map, m));
  return r;
}

inline Polynomial power(const Polynomial& p, long e) {
  Polynomial r(p.variables(), Rational(1));
  for (long i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace detail

/// One-vertex join: vertex 0 of b is identified with vertex 0 of a; edges of a come first.
inline OrientedGraph one_vertex_join(const OrientedGraph& a, const OrientedGraph& b) {
  auto edges = a.directed_edges();
  auto n = Vertex(a.vertex_count());
  for (auto [u, v] : b.directed_edges()) {
    auto map = [&](Vertex x) { return x == 0 ? Vertex(0) : Vertex(n + x - 1); };
    edges.emplace_back(map(u), map(v));
  }
  return OrientedGraph::from_edges(a.vertex_count() + b.vertex_count() - 1, edges);
}

/// Corpus for the Pfaffian-form properties: small graphs of every loop order up to 6.
inline std::vector<NamedGraph> form_property_corpus() {
  std::vector<std::pair<std::string, std::string>> list = {
      {"D1", "1|"},
      {"D2", "11|"},
      {"triangle", "12|2|"},
      {"D3", "111|"},
      {"D3 subdivided", "112|2|"},
      {"D4", "1111|"},
      {"K4", "123|23|3|"},
      {"T122", "1122|2|"},
      {"D5", "11111|"},
      {"K4 doubled edge", "1123|23|3|"},
      {"doubled triangle", "1122|22|"},
      {"prism", "123|24|5|45|5|"},
      {"K33", "345|345|345|||"},
      {"wheel W4", "1234|24|3|4|"},
      {"D3 join D3", "111222||"},
      {"D3 join D5", "11122222||"},
      {"D7", "1111111|"},
      {"G199", "445|446|556|456|||"},
      {"G244", "112|46|56|4566|5||"},
      {"G266", "456|346|356|6|5|6|"},
  };
  std::vector<NamedGraph> out;
  for (const auto& [name, adj] : list) out.push_back({name, parse_adjacency(adj)});
  return out;
}

/// Runs the property checks on one graph; every outcome is appended to `out`.
inline void check_form_properties(const NamedGraph& ng, const FormPropertyOptions& opt,
                                  std::vector<PropertyOutcome>& out) {
  const OrientedGraph& g = ng.graph;
  const std::size_t m = g.edge_count();
  const long l = g.graph.loop_number();
  std::mt19937_64 rng(opt.seed + std::hash<std::string>{}(ng.name));
  auto record = [&](const std::string& prop, bool ok, std::string detail = {}) {
    out.push_back({ng.name, prop, ok, std::move(detail)});
  };
  auto c = oriented_cycle_basis(g);
  record("basis certificate", cycle_basis_certificate(g, c) == 1);
  bool symbolic = m <= opt.symbolic_edges, closed_symbolic = m <= opt.closed_edges;

  std::optional<ProjectiveForm> phi;
  if (closed_symbolic) {
    phi = pfaffian_form(g, c);
    record("closed", phi->closed(), "s = " + std::to_string(phi->s));
    record("pole order", phi->s <= unsigned(l + 1));
    if (l % 2) record("odd loop number gives zero", phi->zero());
    if (symbolic && l >= 3) {
      auto b = canonical_form(g, c, 1);
      record("beta5 closed", b.closed());
    }
  }

  // φ∧φ = 0 and Pf² = det
  if (symbolic && phi) {
    if (l > 0) record("phi^phi = 0", wedge(*phi, *phi).zero());
    auto s = detail::symbolic_laplacian(g, c);
    auto mat = multiply(s.d, scalar_multiply(s.adj, s.d));
    auto pf = pfaffian(mat);
    record("Pf^2 = det", pf * pf == determinant(mat));
  } else {
    bool wedge_ok = true, det_ok = true;
    for (std::size_t t = 0; t < opt.points; ++t) {
      auto p = detail::laplacian_at(c, detail::random_point(m, rng));
      auto mat = multiply(p.d, scalar_multiply(p.inv, p.d));
      auto pf = pfaffian(mat);
      wedge_ok = wedge_ok && (l == 0 || (pf * pf).zero());
      det_ok = det_ok && pf * pf == determinant(mat);
    }
    record("phi^phi = 0 (pointwise)", wedge_ok);
    record("Pf^2 = det (pointwise)", det_ok);
  }

  // basis change by P multiplies φ by det P
  for (int sign : {1, -1}) {
    if (l == 0) break;
    auto p = detail::random_unimodular(std::size_t(l), sign, rng);
    auto c2 = detail::transform_basis(c, p);
    bool ok = true;
    if (symbolic && phi) {
      auto phi2 = pfaffian_form(g, c2);
      ProjectiveForm expect = *phi;
      if (sign < 0) expect.numerator = -expect.numerator;
      ok = phi2 == expect;
    } else {
      for (std::size_t t = 0; t < opt.points && ok; ++t) {
        auto x = detail::random_point(m, rng);
        auto a = detail::laplacian_at(c, x), b = detail::laplacian_at(c2, x);
        auto fa = pfaffian_numerator(a.d, a.inv), fb = pfaffian_numerator(b.d, b.inv);
        ok = fb == fa.scaled(Rational(sign));
      }
    }
    record(sign > 0 ? "basis change det +1" : "basis change det -1", ok);
  }

  // restriction to x_e = 0 equals the form of G/e with the induced basis
  if (closed_symbolic && phi && l % 2 == 0) {
    bool ok = true;
    for (EdgeIndex e = 0; e < m && ok; ++e) {
      if (g.graph.self_loop(e)) continue;
      // contract_edge folds its orientation sign into edge 0; the induced basis needs the bare directions
      auto pos = g.positions();
      auto quotient = contract_edge(g, e);
      if (detail::move_to_front_sign(pos[g.tail(e)], pos[g.head(e)]) < 0) quotient = quotient.negated();
      ok = restrict_edge_zero(*phi, e) == pfaffian_form(quotient, detail::drop_edge(c, e));
    }
    record("restriction = contraction", ok);
  }

  // Whitney flips leave φ unchanged term by term
  auto cuts = whitney_cuts(g.graph);
  if (!cuts.empty()) {
    bool ok = true;
    std::size_t tried = 0;
    std::optional<Polynomial> q;
    if (!(closed_symbolic && phi)) q = top_numerator(g, CanonicalFormSymbol::beta(1)).q;
    for (const auto& cut : cuts) {
      if (tried++ == 3) break;
      auto h = whitney_flip(g, cut);
      if (q)
        ok = ok && top_numerator(h, CanonicalFormSymbol::beta(1)).q == *q;
      else
        ok = ok && pfaffian_form(h, oriented_cycle_basis(h)) == *phi;
    }
    record("Whitney flip equality", ok, std::to_string(cuts.size()) + " cuts");
  }
}

/// φ of a one-vertex join equals the product of the blocks' forms (block-diagonal basis).
inline PropertyOutcome check_block_factorization(const std::string& name, const OrientedGraph& a,
                                                 const OrientedGraph& b) {
  auto g = one_vertex_join(a, b);
  auto ca = oriented_cycle_basis(a), cb = oriented_cycle_basis(b);
  std::size_t ma = a.edge_count(), m = g.edge_count();
  std::vector<std::vector<long>> cols;
  for (std::size_t j = 0; j < ca.loops; ++j) {
    auto col = ca.column(j);
    col.resize(m, 0);
    cols.push_back(col);
  }
  for (std::size_t j = 0; j < cb.loops; ++j) {
    std::vector<long> col(m, 0);
    for (std::size_t e = 0; e < cb.edges; ++e) col[ma + e] = cb(e, j);
    cols.push_back(col);
  }
  auto c = CycleBasisMatrix::from_columns(m, cols);
  auto phi = pfaffian_form(g, c);
  auto fa = detail::embed_form(pfaffian_form(a, ca), 0, m);
  auto fb = detail::embed_form(pfaffian_form(b, cb), ma, m);
  PropertyOutcome r{name, "block factorization", false, {}};
  if (fa.zero() || fb.zero()) {
    r.ok = phi.zero();
    return r;
  }
  if (phi.base != fa.base * fb.base) return r;
  long e1 = (long(phi.s) - long(fa.s)) / 2, e2 = (long(phi.s) - long(fb.s)) / 2;
  auto lhs =
      phi.numerator.scaled(detail::power(fa.base, std::max(-e1, 0L)) * detail::power(fb.base, std::max(-e2, 0L)));
  auto rhs = (fa.numerator * fb.numerator)
                 .scaled(detail::power(fa.base, std::max(e1, 0L)) * detail::power(fb.base, std::max(e2, 0L)));
  r.ok = lhs == rhs;
  return r;
}

struct VanishingWitness {
  std::string condition;
  OrientedGraph graph;
  CanonicalFormSymbol omega;
};

/// One graph per vanishing condition, with ω of the complementary degree.
inline std::vector<VanishingWitness> vanishing_witnesses() {
  auto g199 = parse_adjacency("445|446|556|456|||");
  auto k4 = parse_adjacency("123|23|3|");
  std::vector<VanishingWitness> w;
  w.push_back({"self-loop", parse_adjacency("011|"), CanonicalFormSymbol::one()});
  w.push_back({"cut vertex", one_vertex_join(k4, k4), CanonicalFormSymbol::beta(1)});
  w.push_back({"disconnected", OrientedGraph::from_edges(4, {{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}, {2, 3},
                                                             {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}}),
               CanonicalFormSymbol::beta(1)});
  w.push_back({"2-valent vertex", subdivide_edge(contract_edge(g199, 0), 3), CanonicalFormSymbol::beta(1)});
  // K4 and a path x-z-y hung on two of its vertices: a 2-edge cut
  w.push_back({"2-edge cut",
               OrientedGraph::from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {4, 5}, {5, 6},
                                             {6, 1}}),
               CanonicalFormSymbol::beta(1)});
  w.push_back({"degree above -3", subdivide_edge(subdivide_edge(parse_adjacency("1234|24|3|4|"), 0), 5),
               CanonicalFormSymbol::beta(1)});
  return w;
}

/// The full property suite: per-graph checks, block factorization and vanishing witnesses.
inline std::vector<PropertyOutcome> form_property_suite(const FormPropertyOptions& opt = {}) {
  std::vector<PropertyOutcome> out;
  for (const auto& ng : form_property_corpus()) check_form_properties(ng, opt, out);
  auto d3 = parse_adjacency("111|"), d5 = parse_adjacency("11111|"), k4 = parse_adjacency("123|23|3|");
  out.push_back(check_block_factorization("D3 join D3", d3, d3));
  out.push_back(check_block_factorization("D3 join D5", d3, d5));
  out.push_back(check_block_factorization("K4 join K4", k4, k4));
  out.push_back(check_block_factorization("D3 join K4", d3, k4));
  for (const auto& w : vanishing_witnesses()) {
    bool ok = top_numerator(w.graph, w.omega).q.zero();
    out.push_back({to_adjacency(w.graph), "vanishes: " + w.condition, ok, w.omega.to_string()});
  }
  return out;
}

}  // namespace gc3
