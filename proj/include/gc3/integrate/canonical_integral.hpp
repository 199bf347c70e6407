#pragma once

#include "gc3/complex/chain.hpp"
#include "gc3/forms/graph_forms.hpp"
#include "gc3/graph/canonical.hpp"
#include "gc3/graph/operations.hpp"
#include "gc3/integrate/cache.hpp"
#include "gc3/integrate/exact.hpp"
#include "gc3/integrate/monte_carlo.hpp"
#include "gc3/integrate/tropical.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>

namespace gc3 {

/// Oriented graphs reachable by Whitney flips (each with φ∧ω equal to that of g),
/// stopping early when the closure shows I_g = 0. Returns the reason or nullopt.
inline std::optional<std::string> whitney_vanishing(const OrientedGraph& g, std::size_t limit = 256) {
  auto start = canonical_key(g);
  if (start.sign == 0) return "odd automorphism";
  std::map<CanonicalKey, int> seen{{start.key, start.sign}};
  std::vector<OrientedGraph> queue{g};
  for (std::size_t qi = 0; qi < queue.size() && queue.size() < limit; ++qi) {
    for (const auto& cut : whitney_cuts(queue[qi].graph)) {
      OrientedGraph h = whitney_flip(queue[qi], cut);
      auto ks = canonical_key(h);
      if (ks.sign == 0) return "Whitney flip to a graph with an odd automorphism";
      auto [it, fresh] = seen.try_emplace(ks.key, ks.sign);
      if (!fresh) {
        if (it->second != ks.sign) return "odd Whitney flip to itself";
        continue;
      }
      queue.push_back(std::move(h));
    }
  }
  return std::nullopt;
}

/// Cheap reasons for I_g(ω) = 0, in dispatch order; nullopt if none applies.
inline std::optional<std::string> vanishing_reason(const OrientedGraph& g, const CanonicalFormSymbol& w,
                                                   bool use_flips = true) {
  const auto& h = g.graph;
  long loops = h.loop_number();
  bool single_edge = h.vertex_count == 2 && h.edge_count() == 1 && !h.has_self_loop();
  if (h.has_self_loop()) return "self-loop";
  if (!h.connected()) return "disconnected";
  if (loops % 2) return "odd loop number";
  if (h.vertex_count != w.degree() + 2) return "vertex count differs from form degree + 2";
  if (single_edge) return std::nullopt;
  if (h.vertex_count > 2 && has_cut_vertex(h)) return "cut vertex";
  if (has_two_valent_vertex(h)) return "2-valent vertex";
  if (has_two_edge_cut(h)) return "2-edge cut";
  if (h.degree() > -3) return "degree above -3";
  if (canonical_key(g).sign == 0) return "odd automorphism";
  if (use_flips) return whitney_vanishing(g);
  return std::nullopt;
}

inline std::string integral_cache_key(const OrientedGraph& g) {
  std::string key = to_adjacency(g);
  // edge directions and vertex order are part of the orientation
  key += "#";
  for (Vertex v : g.orientation.vertex_order) key += std::to_string(v) + ",";
  key += "#";
  for (auto f : g.orientation.first_half) key += char('0' + f);
  return key;
}

/// Seed for one graph class, so that different graphs draw independent streams.
inline std::uint64_t graph_seed(std::uint64_t seed, const CanonicalKey& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : key.bytes) h = (h ^ b) * 0x100000001b3ULL;
  return splitmix64(seed ^ h);
}

/// I_g(ω) = (−2π)^{−ℓ/2} ∫ φ_g ∧ ω_g over the open simplex.
/// Dispatch: vanishing criteria, dipoles with ω = 1, zero numerator, Monte Carlo.
/// `known` may carry top_numerator(g, ω) when the caller already has it.
inline IntegralResult canonical_integral(const OrientedGraph& g, const CanonicalFormSymbol& w,
                                         const MonteCarloOptions& opt, IntegralCache* cache = nullptr,
                                         const TopNumerator* known = nullptr) {
  std::string key, omega = w.to_string();
  if (cache) {
    key = integral_cache_key(g);
    if (auto hit = cache->find(key, omega, opt.samples, opt.seed)) return *hit;
  }
  auto finish = [&](IntegralResult r) {
    if (cache) cache->store(key, omega, r);
    return r;
  };
  IntegralResult r;
  r.seed = opt.seed;
  if (auto why = vanishing_reason(g, w)) {
    r.reason = *why;
    return finish(r);
  }
  const auto& h = g.graph;
  long loops = h.loop_number();
  if (h.vertex_count == 2 && w.is_one()) {
    r.method = IntegralMethod::exact_dipole;
    if (loops == 0) {
      // D₁: the empty form integrates to 1 over a point, sign from the edge direction
      r.value = g.tail(0) == g.orientation.vertex_order[0] ? 1 : -1;
      r.reason = "single edge";
      return finish(r);
    }
    auto c = oriented_cycle_basis(g);
    unsigned i = unsigned(loops / 2);
    std::vector<Rational> ones(h.edge_count(), Rational(1));
    Rational q1 = detail::numerator_values(c, w, ones, unsigned(loops + 1))[0];
    Rational prefactor = Rational(factorial(2 * i)) / Rational(Integer(1) << i) / Rational(factorial(i));
    if (i % 2) prefactor = -prefactor;
    r.value = Rational(q1 / prefactor * dipole_exact(i)).get_d();
    r.reason = "dipole";
    return finish(r);
  }
  TopNumerator computed;
  if (!known) computed = top_numerator(g, w);
  const TopNumerator& tn = known ? *known : computed;
  if (tn.q.zero()) {
    r.reason = "zero numerator";
    return finish(r);
  }
  MonteCarloOptions per_graph = opt;
  per_graph.seed = graph_seed(opt.seed, canonical_key(g).key);
  r = mc_integrate(tn.q, h, tn.basis, tn.s, per_graph);
  r.seed = opt.seed;
  double norm = std::pow(-2 * std::numbers::pi, double(loops / 2));
  r.value /= norm;
  r.std_error /= std::abs(norm);
  return finish(r);
}

/// Σ c_G·I_G(β⁵) over a chain in bidegree (6, −6), errors added in quadrature.
/// `representatives` may supply the oriented graph to integrate for a class (e.g. a
/// table row); integrate(g) returns I_g(β⁵) for the graph chosen.
template <class Integrate>
IntegralResult tau1_of_chain_with(const Chain& c, const std::vector<OrientedGraph>& representatives,
                                  Integrate&& integrate) {
  IntegralResult total;
  if (c.zero()) {
    total.reason = "zero chain";
    return total;
  }
  auto bi = c.bidegree();
  if (!bi || bi->loops != 6 || bi->degree != -6) throw std::invalid_argument("tau1 needs a chain in bidegree (6,-6)");
  std::map<CanonicalKey, OrientedGraph> reps;
  for (const auto& g : representatives) reps.emplace(canonical_key(g).key, g);
  double var = 0;
  bool sampled = false;
  for (const auto& [k, coeff] : c.terms()) {
    OrientedGraph g = reference_graph(k);
    int sign = 1;
    if (auto it = reps.find(k); it != reps.end()) {
      g = it->second;
      sign = canonical_key(g).sign;
    }
    IntegralResult r = integrate(g);
    double f = coeff.get_d() * sign;
    total.value += f * r.value;
    var += f * f * r.std_error * r.std_error;
    if (r.method == IntegralMethod::monte_carlo) {
      sampled = true;
      total.samples += r.samples;
      total.seed = r.seed;
    }
  }
  total.std_error = std::sqrt(var);
  total.method = sampled ? IntegralMethod::monte_carlo : IntegralMethod::exact_zero;
  return total;
}

inline IntegralResult tau1_of_chain(const Chain& c, const MonteCarloOptions& opt, IntegralCache* cache = nullptr,
                                    const std::vector<OrientedGraph>& representatives = {}) {
  auto r = tau1_of_chain_with(c, representatives, [&](const OrientedGraph& g) {
    return canonical_integral(g, CanonicalFormSymbol::beta(1), opt, cache);
  });
  r.seed = opt.seed;
  return r;
}

}  // namespace gc3
