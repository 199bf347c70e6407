#pragma once

#include "gc3/exact/polynomial.hpp"
#include "gc3/graph/graph.hpp"
#include "gc3/integrate/monte_carlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace gc3 {

inline constexpr std::size_t tropical_max_edges = 20;

/// ℓ(γ) for every edge subset γ (bit e of the index set iff e ∈ γ).
inline std::vector<int> subgraph_loop_numbers(const HalfEdgeGraph& g) {
  std::size_t m = g.edge_count();
  if (m > tropical_max_edges) throw std::length_error("too many edges for subset tables");
  std::vector<int> loops(std::size_t(1) << m, 0);
  std::vector<std::size_t> parent(g.vertex_count);
  for (std::size_t mask = 1; mask < loops.size(); ++mask) {
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int rank = 0, size = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (!((mask >> e) & 1)) continue;
      ++size;
      auto a = find(g.endpoint(e, 0)), b = find(g.endpoint(e, 1));
      if (a != b) {
        parent[a] = b;
        ++rank;
      }
    }
    loops[mask] = size - rank;
  }
  return loops;
}

/// For every variable subset γ, the lowest total degree in the variables of γ over
/// the monomials of p (the subgraph loop number when p is a Symanzik polynomial).
inline std::vector<int> subset_min_degrees(const Polynomial& p) {
  std::size_t m = p.variables();
  if (m > tropical_max_edges) throw std::length_error("too many variables for subset tables");
  std::vector<int> out(std::size_t(1) << m, 0);
  for (std::size_t mask = 1; mask < out.size(); ++mask) {
    int best = -1;
    for (const auto& [mono, c] : p.terms()) {
      int d = 0;
      for (std::size_t e = 0; e < m; ++e)
        if ((mask >> e) & 1) d += int(mono.exp[e]);
      if (best < 0 || d < best) best = d;
    }
    out[mask] = best < 0 ? 0 : best;
  }
  return out;
}

/// Draws points of the projective simplex with density ∝ Π x_e^{ν_e−1} / Ψ_tr(x)^{D/2},
/// Ψ_tr the tropical (maximal-monomial) approximation of Ψ, by choosing an edge ordering
/// (largest first) edge by edge and then the successive ratios.
/// ω(γ) = Σ_{e∈γ} ν_e − (D/2)·ℓ(γ) must be positive on every non-empty proper subset.
class TropicalSampler {
 public:
  TropicalSampler(const std::vector<int>& loops, const std::vector<long>& nu, long dim) : m_(nu.size()) {
    if (loops.size() != (std::size_t(1) << m_)) throw std::invalid_argument("subset table size mismatch");
    std::size_t full = loops.size() - 1;
    omega_.assign(loops.size(), 0);
    j_.assign(loops.size(), 0);
    convergent_ = true;
    for (std::size_t mask = 1; mask < loops.size(); ++mask) {
      long twice = 0;
      for (std::size_t e = 0; e < m_; ++e)
        if ((mask >> e) & 1) twice += 2 * nu[e];
      twice -= dim * loops[mask];
      omega_[mask] = 0.5 * double(twice);
      if (mask != full && twice <= 0) convergent_ = false;
    }
    if (twice_total(loops, nu, dim) != 0) throw std::invalid_argument("integrand is not projective");
    if (!convergent_) return;
    for (std::size_t mask = 1; mask < loops.size(); ++mask) {
      if (std::has_single_bit(mask)) {
        j_[mask] = 1;
        continue;
      }
      double s = 0;
      for (std::size_t e = 0; e < m_; ++e)
        if ((mask >> e) & 1) s += j_[mask ^ (std::size_t(1) << e)] / omega_[mask ^ (std::size_t(1) << e)];
      j_[mask] = s;
    }
  }

  bool convergent() const { return convergent_; }
  /// ∫ Π x^{ν−1} Ω / Ψ_tr^{D/2} over the simplex.
  double integral() const { return j_.back(); }

  /// Fills log x_e for one sample, normalized so that the largest coordinate is 1.
  void sample(std::mt19937_64& rng, double* logx) const {
    std::size_t gamma = j_.size() - 1;
    double level = 0;
    while (!std::has_single_bit(gamma)) {
      double target = detail::unit_open_closed(rng) * j_[gamma], acc = 0;
      std::size_t pick = m_;
      for (std::size_t e = 0; e < m_; ++e) {
        if (!((gamma >> e) & 1)) continue;
        std::size_t rest = gamma ^ (std::size_t(1) << e);
        acc += j_[rest] / omega_[rest];
        pick = e;
        if (acc >= target) break;
      }
      logx[pick] = level;
      gamma ^= std::size_t(1) << pick;
      level += std::log(detail::unit_open_closed(rng)) / omega_[gamma];
    }
    logx[std::countr_zero(gamma)] = level;
  }

 private:
  static long twice_total(const std::vector<int>& loops, const std::vector<long>& nu, long dim) {
    long t = 0;
    for (long n : nu) t += 2 * n;
    return t - dim * loops.back();
  }

  std::size_t m_;
  std::vector<double> omega_, j_;
  bool convergent_ = false;
};

/// log Ψ(x) − log Ψ_tr(x) for a graph. The dual Laplacian is taken in the fundamental cycle
/// basis of the minimum spanning tree and scaled by the chord lengths; its determinant is then
/// Ψ/Ψ_tr ∈ [1, #trees], so the Cholesky factorization stays well conditioned at any sample.
class GraphPsiRatio {
 public:
  GraphPsiRatio(const HalfEdgeGraph& g, const CycleBasisMatrix& c) : g_(g), l_(c.loops), m_(c.edges) {}

  struct Scratch {
    std::vector<double> a;
    std::vector<std::size_t> order, parent, chords, up_edge, depth;
    std::vector<int> cycle;
    std::vector<bool> tree;
  };

  double operator()(const double* logx, Scratch& s) const {
    std::size_t n = g_.vertex_count;
    s.order.resize(m_);
    std::iota(s.order.begin(), s.order.end(), std::size_t(0));
    std::sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) { return logx[a] < logx[b]; });
    s.parent.resize(n);
    std::iota(s.parent.begin(), s.parent.end(), std::size_t(0));
    auto find = [&](std::size_t x) {
      while (s.parent[x] != x) x = s.parent[x] = s.parent[s.parent[x]];
      return x;
    };
    s.tree.assign(m_, false);
    s.chords.clear();
    for (std::size_t e : s.order) {
      auto a = find(g_.endpoint(e, 0)), b = find(g_.endpoint(e, 1));
      if (a == b)
        s.chords.push_back(e);
      else {
        s.parent[a] = b;
        s.tree[e] = true;
      }
    }
    if (s.chords.size() != l_) throw std::domain_error("graph is not connected");
    // root the tree at vertex 0
    constexpr std::size_t none = std::size_t(-1);
    s.up_edge.assign(n, none);
    s.depth.assign(n, none);
    s.depth[0] = 0;
    for (bool grown = true; grown;) {
      grown = false;
      for (std::size_t e = 0; e < m_; ++e) {
        if (!s.tree[e]) continue;
        std::size_t u = g_.endpoint(e, 0), v = g_.endpoint(e, 1);
        if (s.depth[u] != none && s.depth[v] == none) {
          s.depth[v] = s.depth[u] + 1;
          s.up_edge[v] = e;
          grown = true;
        } else if (s.depth[v] != none && s.depth[u] == none) {
          s.depth[u] = s.depth[v] + 1;
          s.up_edge[u] = e;
          grown = true;
        }
      }
    }
    // fundamental cycles: chord tail → head, then the tree path head → tail
    s.cycle.assign(l_ * m_, 0);
    for (std::size_t i = 0; i < l_; ++i) {
      int* c = &s.cycle[i * m_];
      std::size_t e = s.chords[i];
      c[e] += 1;
      std::size_t u = g_.endpoint(e, 1), v = g_.endpoint(e, 0);
      auto step = [&](std::size_t& w, int dir) {
        std::size_t f = s.up_edge[w];
        std::size_t above = g_.endpoint(f, 0) == w ? g_.endpoint(f, 1) : g_.endpoint(f, 0);
        c[f] += (g_.endpoint(f, 0) == w ? 1 : -1) * dir;
        w = above;
      };
      while (u != v) {
        if (s.depth[u] >= s.depth[v])
          step(u, 1);
        else
          step(v, -1);
      }
    }
    s.a.assign(l_ * l_, 0.0);
    std::vector<double>& a = s.a;
    for (std::size_t i = 0; i < l_; ++i)
      for (std::size_t j = i; j < l_; ++j) {
        double half = 0.5 * (logx[s.chords[i]] + logx[s.chords[j]]), v = 0;
        for (std::size_t e = 0; e < m_; ++e)
          if (int w = s.cycle[i * m_ + e] * s.cycle[j * m_ + e]) v += w * std::exp(logx[e] - half);
        a[i * l_ + j] = v;
      }
    double log_det = 0;
    for (std::size_t k = 0; k < l_; ++k) {
      double d = a[k * l_ + k];
      for (std::size_t t = 0; t < k; ++t) d -= a[t * l_ + k] * a[t * l_ + k];
      if (!(d > 0)) throw std::domain_error("dual Laplacian is not positive definite at a sample point");
      log_det += std::log(d);
      d = std::sqrt(d);
      a[k * l_ + k] = d;
      for (std::size_t j = k + 1; j < l_; ++j) {
        double v = a[k * l_ + j];
        for (std::size_t t = 0; t < k; ++t) v -= a[t * l_ + k] * a[t * l_ + j];
        a[k * l_ + j] = v / d;
      }
    }
    return log_det;
  }

 private:
  HalfEdgeGraph g_;
  std::size_t l_, m_;
};

/// log Ψ(x) − log Ψ_tr(x) evaluated from the monomials of Ψ (positive coefficients).
class PolynomialPsiRatio {
 public:
  explicit PolynomialPsiRatio(const Polynomial& psi) : m_(psi.variables()) {
    for (const auto& [mono, c] : psi.terms()) {
      if (sgn(c) <= 0) throw std::invalid_argument("tropical sampling needs positive coefficients");
      Term t{std::log(c.get_d()), {}};
      for (std::size_t e = 0; e < m_; ++e)
        for (unsigned k = 0; k < mono.exp[e]; ++k) t.vars.push_back(std::uint8_t(e));
      terms_.push_back(std::move(t));
    }
  }
  struct Scratch {
    std::vector<double> logs;
  };
  double operator()(const double* logx, Scratch& s) const {
    s.logs.resize(terms_.size());
    double best = -INFINITY, best_mono = -INFINITY;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      double v = 0;
      for (auto e : terms_[i].vars) v += logx[e];
      best_mono = std::max(best_mono, v);
      s.logs[i] = v + terms_[i].log_c;
      best = std::max(best, s.logs[i]);
    }
    double sum = 0;
    for (double v : s.logs) sum += std::exp(v - best);
    return best + std::log(sum) - best_mono;
  }

 private:
  struct Term {
    double log_c;
    std::vector<std::uint8_t> vars;
  };
  std::size_t m_;
  std::vector<Term> terms_;
};

namespace detail {

/// Mixture of tropical samplers, one per monomial of Q with weight |c_a|·I_tr(a).
/// Each weight is Z·Q/Σ|c_a|x^{ν_a−1}·(Ψ_tr/Ψ)^{s/2}, bounded by Z. nullopt if some monomial
/// is not tropically convergent.
template <class Ratio>
std::optional<IntegralResult> tropical_estimate(const Polynomial& q, const std::vector<int>& loops,
                                                const Ratio& ratio, unsigned s, const MonteCarloOptions& opt) {
  std::size_t m = q.variables();
  struct Component {
    double c;
    std::vector<double> exps;
    TropicalSampler sampler;
  };
  std::vector<Component> comps;
  std::vector<double> cumulative;
  double z = 0;
  for (const auto& [mono, c] : q.terms()) {
    std::vector<long> nu(m);
    std::vector<double> exps(m);
    for (std::size_t e = 0; e < m; ++e) {
      nu[e] = long(mono.exp[e]) + 1;
      exps[e] = double(mono.exp[e]);
    }
    TropicalSampler ts(loops, nu, long(s));
    if (!ts.convergent()) return std::nullopt;
    z += std::abs(c.get_d()) * ts.integral();
    cumulative.push_back(z);
    comps.push_back({c.get_d(), std::move(exps), std::move(ts)});
  }
  const double half_s = 0.5 * double(s);
  return run_streams(opt, [&] {
    return [&, logx = std::vector<double>(m), lm = std::vector<double>(comps.size()),
            scratch = typename Ratio::Scratch()](std::mt19937_64& rng) mutable {
      double u = unit_open_closed(rng) * z;
      std::size_t a = std::size_t(std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      if (a >= comps.size()) a = comps.size() - 1;
      comps[a].sampler.sample(rng, logx.data());
      double top = -INFINITY;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        double v = 0;
        for (std::size_t e = 0; e < m; ++e) v += comps[i].exps[e] * logx[e];
        lm[i] = v;
        top = std::max(top, v);
      }
      double num = 0, den = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        double w = std::exp(lm[i] - top);
        num += comps[i].c * w;
        den += std::abs(comps[i].c) * w;
      }
      return z * num / den * std::exp(-half_s * ratio(logx.data(), scratch));
    };
  });
}

}  // namespace detail

/// ∫_{σ_m} Q·Ω_m/Ψ^{s/2}. Tropical sampling when every monomial of Q is tropically
/// convergent and opt.sampler asks for it, Dirichlet(½) otherwise.
inline IntegralResult mc_integrate(const Polynomial& q, const Polynomial& psi, unsigned s, std::size_t m,
                                   const MonteCarloOptions& opt) {
  if (q.zero() || opt.sampler == Sampler::dirichlet || m > tropical_max_edges)
    return dirichlet_integrate(q, psi, s, m, opt);
  if (q.variables() != m || psi.variables() != m) throw std::invalid_argument("variable count mismatch");
  if (!q.homogeneous() || !psi.homogeneous() || 2 * (q.total_degree() + long(m)) != long(s) * psi.total_degree())
    throw std::invalid_argument("integrand is not projective");
  if (auto r = detail::tropical_estimate(q, subset_min_degrees(psi), PolynomialPsiRatio(psi), s, opt)) return *r;
  return dirichlet_integrate(q, psi, s, m, opt);
}

/// Same integral for a graph g with cycle basis c, Ψ = det Λ.
inline IntegralResult mc_integrate(const Polynomial& q, const HalfEdgeGraph& g, const CycleBasisMatrix& c, unsigned s,
                                   const MonteCarloOptions& opt) {
  if (q.zero() || opt.sampler == Sampler::dirichlet || c.edges > tropical_max_edges)
    return dirichlet_integrate(q, c, s, opt);
  if (q.variables() != c.edges) throw std::invalid_argument("variable count mismatch");
  if (!q.homogeneous() || 2 * (q.total_degree() + long(c.edges)) != long(s) * long(c.loops))
    throw std::invalid_argument("integrand is not projective");
  if (auto r = detail::tropical_estimate(q, subgraph_loop_numbers(g), GraphPsiRatio(g, c), s, opt)) return *r;
  return dirichlet_integrate(q, c, s, opt);
}

}  // namespace gc3
