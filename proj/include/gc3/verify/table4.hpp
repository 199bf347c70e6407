#pragma once

#include "gc3/complex/operations.hpp"
#include "gc3/integrate/canonical_integral.hpp"
#include "gc3/integrate/periods.hpp"
#include "gc3/io/data.hpp"
#include "gc3/parallel.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gc3 {

struct Table4Options {
  MonteCarloOptions mc;
  /// Rows whose table value is below this in magnitude get `small_multiplier` times the samples.
  double small_threshold = 0.5;
  std::uint64_t small_multiplier = 10;
  /// Cap on newly drawn samples over the whole run; 0 means no cap. Rows past it are skipped.
  std::uint64_t budget = 0;
};

struct Table4Entry {
  std::string name, edges;
  bool nonzero_numerator = false;
  unsigned s = 0;
  IntegralResult result;
  std::optional<double> expected;
  bool from_cache = false;
  bool skipped = false;

  /// |value − expected| ≤ 3σ, exact results must match to the table's 5 decimals.
  bool within_tolerance() const {
    if (!expected) return false;
    double diff = std::abs(result.value - *expected);
    if (result.std_error == 0) return diff <= 5e-6;
    return diff <= 3 * result.std_error;
  }
  /// σ ≤ max(1% relative, 0.05 absolute).
  bool sigma_ok() const {
    double ref = expected ? std::abs(*expected) : std::abs(result.value);
    return result.std_error <= std::max(0.01 * ref, 0.05);
  }
};

struct Table4Result {
  std::vector<Table4Entry> rows;  // the 45 table rows, in table order
  std::size_t classes = 0, nonzero = 0, zero = 0;
  std::vector<std::string> unexpected_nonzero;  // classes with Q ≠ 0 that are not table rows
  std::uint64_t new_samples = 0;
  std::map<CanonicalKey, IntegralResult> by_class;  // in the reference orientation of each class
};

/// top_numerator(G, β⁵) for every graph of the list.
inline std::vector<TopNumerator> numerator_census(const std::vector<NamedGraph>& graphs, std::size_t jobs = 1) {
  std::vector<TopNumerator> out(graphs.size());
  parallel_for(graphs.size(), jobs,
               [&](std::size_t i) { out[i] = top_numerator(graphs[i].graph, CanonicalFormSymbol::beta(1)); });
  return out;
}

/// Census bookkeeping plus the integrals of the table rows; `numerators` from numerator_census.
inline Table4Result compute_table4(const std::vector<NamedGraph>& graphs, const std::vector<TopNumerator>& numerators,
                                   const std::vector<Table4Row>& table, const Table4Options& opt,
                                   IntegralCache* cache = nullptr) {
  const auto beta5 = CanonicalFormSymbol::beta(1);
  if (numerators.size() != graphs.size()) throw std::invalid_argument("one numerator per graph required");
  Table4Result out;
  out.classes = graphs.size();

  std::map<CanonicalKey, std::size_t> index;
  for (std::size_t i = 0; i < graphs.size(); ++i) index[canonical_key(graphs[i].graph).key] = i;
  std::map<CanonicalKey, const Table4Row*> rows;
  for (const auto& r : table) rows[canonical_key(r.graph).key] = &r;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (numerators[i].q.zero()) {
      ++out.zero;
      continue;
    }
    ++out.nonzero;
    if (!rows.count(canonical_key(graphs[i].graph).key))
      out.unexpected_nonzero.push_back(graphs[i].name.empty() ? to_adjacency(graphs[i].graph) : graphs[i].name);
  }

  for (const auto& row : table) {
    Table4Entry e;
    e.name = row.name;
    e.edges = row.edges;
    e.expected = row.tau1;
    auto ks = canonical_key(row.graph);
    MonteCarloOptions mc = opt.mc;
    if (std::abs(row.tau1) < opt.small_threshold) mc.samples *= opt.small_multiplier;
    std::optional<TopNumerator> tn;
    if (auto it = index.find(ks.key); it != index.end()) {
      // the list may store the class with another orientation; the row's own numerator is needed
      if (to_adjacency(graphs[it->second].graph) == to_adjacency(row.graph)) tn = numerators[it->second];
    }
    if (!tn) tn = top_numerator(row.graph, beta5);
    e.nonzero_numerator = !tn->q.zero();
    e.s = tn->s;
    if (cache)
      e.from_cache = cache->find(integral_cache_key(row.graph), beta5.to_string(), mc.samples, mc.seed).has_value();
    if (opt.budget && !e.from_cache && !tn->q.zero() && out.new_samples + mc.samples > opt.budget) {
      e.skipped = true;
      out.rows.push_back(std::move(e));
      continue;
    }
    e.result = canonical_integral(row.graph, beta5, mc, cache, &*tn);
    if (!e.from_cache && e.result.method == IntegralMethod::monte_carlo) out.new_samples += e.result.samples;
    IntegralResult ref = e.result;
    ref.value *= ks.sign;
    out.by_class[ks.key] = ref;
    out.rows.push_back(std::move(e));
  }
  return out;
}

/// τ₁ of a chain from the per-class results of a table run; classes outside the
/// table are integrated on demand.
inline IntegralResult tau1_from_table(const Chain& c, const Table4Result& t, const MonteCarloOptions& opt,
                                      IntegralCache* cache = nullptr) {
  return tau1_of_chain_with(c, {}, [&](const OrientedGraph& g) {
    auto ks = canonical_key(g);
    if (auto it = t.by_class.find(ks.key); it != t.by_class.end()) {
      IntegralResult r = it->second;
      r.value *= ks.sign;
      return r;
    }
    return canonical_integral(g, CanonicalFormSymbol::beta(1), opt, cache);
  });
}

/// Σ_G c_G·λ(G) over a chain, reading λ from the table (0 for classes outside it).
inline std::array<Rational, 7> lambda_of_chain(const Chain& c, const std::vector<Table4Row>& table) {
  std::array<Rational, 7> out;
  out.fill(Rational(0));
  for (const auto& row : table) {
    auto ks = canonical_key(row.graph);
    Rational coeff = c.coefficient(ks.key);
    if (is_zero(coeff)) continue;
    // the chain stores coeff·(reference), and reference = sign·(row graph)
    for (std::size_t i = 0; i < 7; ++i) out[i] += coeff * Rational(ks.sign) * Rational(row.lambda[i]);
  }
  return out;
}

/// The cochain G ↦ λ_i(G) as an element of the dual, for ⟨λ_i, ∂H⟩ checks.
inline Chain lambda_cochain(const std::vector<Table4Row>& table, std::size_t i) {
  Chain q;
  for (const auto& row : table)
    if (row.lambda[i]) q += dual_element(row.graph, Rational(row.lambda[i]));
  return q;
}

}  // namespace gc3
