#pragma once

#include "gc3/exact/flat_form.hpp"
#include "gc3/exact/modular.hpp"
#include "gc3/forms/canonical_symbol.hpp"
#include "gc3/forms/invariant.hpp"
#include "gc3/forms/laplacian.hpp"
#include "gc3/forms/projective_form.hpp"

#include <optional>
#include <random>

namespace gc3 {

namespace detail {

struct SymbolicLaplacian {
  std::size_t m = 0, loops = 0;
  Matrix<Polynomial> adj;
  Polynomial psi;
  Matrix<PolyForm> d;
};

inline SymbolicLaplacian symbolic_laplacian(const OrientedGraph& g, const CycleBasisMatrix& c) {
  SymbolicLaplacian s;
  s.m = c.edges;
  s.loops = c.loops;
  auto lam = dual_laplacian(g, c);
  s.psi = s.loops ? determinant(lam) : Polynomial(s.m, Rational(1));
  s.adj = adjugate(lam);
  for (auto& row : s.adj)
    for (auto& p : row)
      if (p.variables() < s.m) p = p + Polynomial(s.m);
  s.d = laplacian_differential<PolyForm>(c);
  return s;
}

inline GeneratorSet remove_generator(GeneratorSet s, unsigned e) {
  GeneratorSet low = s & ((GeneratorSet(1) << e) - 1);
  return low | ((s >> (e + 1)) << e);
}

inline Polynomial remove_variable(const Polynomial& p, std::size_t e, std::size_t nvars) {
  std::vector<std::size_t> map(nvars);
  for (std::size_t i = 0; i < nvars; ++i) map[i] = i < e ? i : i - 1;
  return p.substitute(e, Rational(0)).rename(map, nvars - 1);
}

}  // namespace detail

/// φ_G = Pf(dΛ·adj Λ·dΛ)/Ψ^{(ℓ+1)/2}, reduced; zero for odd ℓ.
inline ProjectiveForm pfaffian_form(const OrientedGraph& g, const CycleBasisMatrix& c) {
  auto s = detail::symbolic_laplacian(g, c);
  ProjectiveForm f{PolyForm(), unsigned(s.loops + 1), s.psi, s.m};
  if (s.loops % 2) return f;
  f.numerator = s.loops ? pfaffian_numerator(s.d, s.adj) : PolyForm::scalar(Polynomial(s.m, Rational(1)));
  return f.reduce();
}

/// β^{4k+1}_G = tr((adj Λ·dΛ)^{4k+1})/Ψ^{4k+1}, reduced.
inline ProjectiveForm canonical_form(const OrientedGraph& g, const CycleBasisMatrix& c, unsigned k) {
  if (k == 0) throw FormError("canonical form index must be at least 1");
  auto s = detail::symbolic_laplacian(g, c);
  unsigned r = 4 * k + 1;
  ProjectiveForm f{PolyForm(), 2 * r, s.psi, s.m};
  if (s.loops) f.numerator = trace_powers(s.d, s.adj, {r}).at(r);
  return f.reduce();
}

/// φ_G ∧ ω_G computed symbolically (small graphs).
inline ProjectiveForm graph_form(const OrientedGraph& g, const CycleBasisMatrix& c, const CanonicalFormSymbol& w) {
  ProjectiveForm f = pfaffian_form(g, c);
  for (unsigned k : w.generators()) f = wedge(f, canonical_form(g, c, k));
  return f;
}

/// Restriction to x_e = 0 (and dx_e = 0); edge e is removed from the variable list,
/// so the result lives on the edges of G/e.
inline ProjectiveForm restrict_edge_zero(const ProjectiveForm& f, EdgeIndex e) {
  if (e >= f.variables) throw FormError("edge index out of range");
  ProjectiveForm r;
  r.variables = f.variables - 1;
  r.s = f.s;
  r.base = detail::remove_variable(f.base, e, f.variables);
  if (r.base.zero()) throw FormError("restriction kills the Symanzik polynomial (self-loop)");
  for (const auto& [set, c] : f.numerator.terms()) {
    if (set & (GeneratorSet(1) << e)) continue;
    r.numerator.add(detail::remove_generator(set, unsigned(e)), detail::remove_variable(c, e, f.variables));
  }
  return r.reduce();
}

/// Coefficients of dx_{E∖e} (e = 0..m−1) in Pf(dΛ Λ⁻¹ dΛ) ∧ ω at the point x.
/// φ ∧ ω equals this form divided by √Ψ(x).
template <class F>
std::vector<F> top_components(const CycleBasisMatrix& c, const CanonicalFormSymbol& w, const std::vector<F>& x,
                              F* psi_out = nullptr) {
  std::size_t m = c.edges, l = c.loops;
  Matrix<F> lam = zero_matrix<F>(l, l);
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t i = 0; i < l; ++i) {
      if (!c(e, i)) continue;
      for (std::size_t j = 0; j < l; ++j)
        if (c(e, j)) lam[i][j] += x[e] * F(c(e, i) * c(e, j));
    }
  if (psi_out) *psi_out = field_determinant(lam);
  std::vector<F> out(m, F(0));
  if (l % 2) return out;
  Matrix<F> inv = field_inverse(lam);
  auto d = laplacian_differential<FlatForm<F>>(c);
  FlatForm<F> top = l ? pfaffian_numerator(d, inv) : FlatForm<F>::scalar(F(1));
  for (auto& [r, t] : trace_powers(d, inv, w.exponents())) top = top * t;
  GeneratorSet all = (GeneratorSet(1) << m) - 1;
  for (std::size_t e = 0; e < m; ++e) out[e] = top.coefficient(all & ~(GeneratorSet(1) << e));
  return out;
}

struct TopNumerator {
  Polynomial q;
  unsigned s = 0;  // φ∧ω = q·Ω_m / Ψ^{s/2}
  CycleBasisMatrix basis;
};

namespace detail {

inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      cur.exp[i] = std::uint8_t(left);
      cur.degree = std::uint16_t(degree);
      out.push_back(cur);
      cur.exp[i] = 0;
      return;
    }
    for (unsigned t = left + 1; t-- > 0;) {
      cur.exp[i] = std::uint8_t(t);
      self(self, i + 1, left - t);
    }
    cur.exp[i] = 0;
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

template <class F>
F monomial_value(const Monomial& mon, const std::vector<F>& x) {
  F v(1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (unsigned k = 0; k < mon.exp[i]; ++k) v *= x[i];
  return v;
}

/// The values (−1)^e c_e Ψ^{(s−1)/2} / x_e, which all equal Q(x) when the ansatz holds.
template <class F>
std::vector<F> numerator_values(const CycleBasisMatrix& c, const CanonicalFormSymbol& w, const std::vector<F>& x,
                                unsigned s) {
  F psi;
  auto comps = top_components(c, w, x, &psi);
  F scale = F(1);
  for (unsigned i = 0; i < (s - 1) / 2; ++i) scale *= psi;
  std::vector<F> out(comps.size());
  for (std::size_t e = 0; e < comps.size(); ++e) {
    F v = comps[e] * scale / x[e];
    out[e] = (e % 2) ? F(-v) : v;
  }
  return out;
}

/// Solves the square system A·c = b modulo p; nullopt if singular.
inline std::optional<std::vector<ModP>> solve_mod_p(std::vector<std::vector<ModP>> a, std::vector<ModP> b) {
  std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    ModP inv = a[col][col].inverse();
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a[r][col])) continue;
      ModP f = a[r][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace detail

struct NumeratorOptions {
  std::size_t max_monomials = 4000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  unsigned exact_checks = 2;
};

/// Q with φ_G ∧ ω_G = Q·Ω_m/Ψ^{s/2} for the smallest s that admits a polynomial Q.
/// Values of the form are computed exactly at sample points (mod p and over Q);
/// Q is interpolated mod p, lifted to rationals and re-checked over Q on every component.
inline TopNumerator top_numerator(const OrientedGraph& g, const CanonicalFormSymbol& w, NumeratorOptions opt = {}) {
  std::size_t m = g.edge_count();
  long l = g.graph.loop_number();
  TopNumerator out;
  out.s = unsigned(l + 1);
  out.q = Polynomial(m);
  if (m >= 31) throw FormError("too many edges for the exterior algebra");
  out.basis = g.graph.connected() ? oriented_cycle_basis(g) : forest_cycle_basis(g);
  if (l % 2 || long(w.degree()) + l != long(m) - 1) return out;

  std::mt19937_64 rng(opt.seed);
  auto random_point = [&] {
    std::vector<ModP> x(m);
    for (auto& v : x) v = ModP::raw(1 + rng() % (ModP::p - 1));
    return x;
  };

  // zero test at two independent points
  bool all_zero = true;
  for (int t = 0; t < 2 && all_zero; ++t)
    for (const ModP& v : top_components(out.basis, w, random_point()))
      if (!is_zero(v)) all_zero = false;
  if (all_zero) return out;

  for (unsigned s = 1; s <= unsigned(l + 1); s += 2) {
    long deg = long(s) * l / 2 - long(m);
    if (deg < 0) continue;
    auto monos = detail::monomials_of_degree(m, unsigned(deg));
    if (monos.size() > opt.max_monomials) throw FormError("numerator interpolation exceeds the monomial cap");

    std::vector<std::vector<ModP>> rows;
    std::vector<ModP> rhs;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      auto x = random_point();
      rhs.push_back(detail::numerator_values(out.basis, w, x, s)[0]);
      std::vector<ModP> row(monos.size());
      for (std::size_t j = 0; j < monos.size(); ++j) row[j] = detail::monomial_value(monos[j], x);
      rows.push_back(std::move(row));
    }
    auto coeffs = detail::solve_mod_p(std::move(rows), std::move(rhs));
    if (!coeffs) throw FormError("singular interpolation system");

    bool fits = true;
    for (int t = 0; t < 3 && fits; ++t) {
      auto x = random_point();
      ModP q(0);
      for (std::size_t j = 0; j < monos.size(); ++j) q += (*coeffs)[j] * detail::monomial_value(monos[j], x);
      for (const ModP& v : detail::numerator_values(out.basis, w, x, s))
        if (v != q) fits = false;
    }
    if (!fits) continue;

    Polynomial q(m);
    for (std::size_t j = 0; j < monos.size(); ++j) {
      if (is_zero((*coeffs)[j])) continue;
      auto r = rational_reconstruction((*coeffs)[j]);
      if (!r) throw FormError("numerator coefficient has no small rational lift");
      q.add_term(monos[j], *r);
    }
    std::uniform_int_distribution<long> small(1, 97);
    for (unsigned t = 0; t < opt.exact_checks; ++t) {
      std::vector<Rational> x(m);
      for (auto& v : x) v = Rational(small(rng));
      Rational expect = q.evaluate(x);
      for (const Rational& v : detail::numerator_values(out.basis, w, x, s))
        if (v != expect) throw FormError("lifted numerator fails the exact check");
    }
    out.q = std::move(q);
    out.s = s;
    return out;
  }
  throw FormError("no polynomial numerator up to the pole bound");
}

}  // namespace gc3
