#pragma once

#include "gc3/exact/polynomial.hpp"
#include "gc3/graph/operations.hpp"
#include "gc3/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gc3 {

enum class IntegralMethod { exact_zero, exact_dipole, exact_series_parallel, monte_carlo };

inline std::string method_name(IntegralMethod m) {
  switch (m) {
    case IntegralMethod::exact_zero: return "exact-zero";
    case IntegralMethod::exact_dipole: return "exact-dipole";
    case IntegralMethod::exact_series_parallel: return "exact-series-parallel";
    case IntegralMethod::monte_carlo: return "monte-carlo";
  }
  return "?";
}

inline IntegralMethod parse_method(const std::string& s) {
  for (auto m : {IntegralMethod::exact_zero, IntegralMethod::exact_dipole, IntegralMethod::exact_series_parallel,
                 IntegralMethod::monte_carlo})
    if (method_name(m) == s) return m;
  throw std::invalid_argument("unknown integration method: " + s);
}

struct IntegralResult {
  double value = 0;
  double std_error = 0;
  IntegralMethod method = IntegralMethod::exact_zero;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string reason;  // why an exact method applied
};

enum class Sampler { tropical, dirichlet };

struct MonteCarloOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  Sampler sampler = Sampler::tropical;
};

/// Number of independent streams a run is split into; fixed, so results do not depend on `jobs`.
inline constexpr std::size_t mc_streams = 64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream i: splitmix64 applied to seed + i·golden-ratio constant.
inline std::uint64_t stream_seed(std::uint64_t seed, std::size_t i) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(i));
}

/// Polynomial flattened for double evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p) : nvars_(p.variables()) {
    for (const auto& [m, c] : p.terms()) {
      Term t{c.get_d(), {}};
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < m.exp[i]; ++k) t.vars.push_back(std::uint8_t(i));
      terms_.push_back(std::move(t));
    }
  }
  double operator()(const double* x) const {
    double acc = 0;
    for (const auto& t : terms_) {
      double v = t.c;
      for (auto i : t.vars) v *= x[i];
      acc += v;
    }
    return acc;
  }
  std::size_t variables() const { return nvars_; }

 private:
  struct Term {
    double c;
    std::vector<std::uint8_t> vars;
  };
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// √Ψ(x) as √det Λ(x) via Cholesky; Λ = Σ_e x_e c_e c_eᵀ for cycle-basis rows c_e.
class LaplacianRootPsi {
 public:
  explicit LaplacianRootPsi(const CycleBasisMatrix& c) : l_(c.loops) {
    for (std::size_t e = 0; e < c.edges; ++e)
      for (std::size_t i = 0; i < l_; ++i)
        for (std::size_t j = i; j < l_; ++j)
          if (long v = c(e, i) * c(e, j)) entries_.push_back({e, i * l_ + j, double(v)});
  }
  double operator()(const double* x, std::vector<double>& a) const {
    a.assign(l_ * l_, 0.0);
    for (const auto& t : entries_) a[t.slot] += t.sign * x[t.edge];
    double root = 1;
    // in-place Cholesky on the upper triangle
    for (std::size_t k = 0; k < l_; ++k) {
      double d = a[k * l_ + k];
      for (std::size_t t = 0; t < k; ++t) d -= a[t * l_ + k] * a[t * l_ + k];
      if (!(d > 0)) return 0;
      d = std::sqrt(d);
      a[k * l_ + k] = d;
      root *= d;
      for (std::size_t j = k + 1; j < l_; ++j) {
        double v = a[k * l_ + j];
        for (std::size_t t = 0; t < k; ++t) v -= a[t * l_ + k] * a[t * l_ + j];
        a[k * l_ + j] = v / d;
      }
    }
    return root;
  }

 private:
  struct Entry {
    std::size_t edge, slot;
    double sign;
  };
  std::size_t l_;
  std::vector<Entry> entries_;
};

namespace detail {

struct Moments {
  double n = 0, mean = 0, m2 = 0;
  void add(double v) {
    n += 1;
    double d = v - mean;
    mean += d / n;
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    double total = n + o.n, d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

/// Runs `samples` draws split over the fixed streams; make_draw(stream) returns a
/// callable taking the stream's generator and producing one weight.
template <class MakeDraw>
IntegralResult run_streams(const MonteCarloOptions& opt, MakeDraw&& make_draw) {
  IntegralResult res;
  res.method = IntegralMethod::monte_carlo;
  res.samples = opt.samples;
  res.seed = opt.seed;
  if (opt.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  std::vector<Moments> parts(mc_streams);
  parallel_for(mc_streams, opt.jobs, [&](std::size_t i) {
    std::uint64_t count = opt.samples / mc_streams + (i < opt.samples % mc_streams ? 1 : 0);
    std::mt19937_64 rng(stream_seed(opt.seed, i));
    auto draw = make_draw();
    Moments mom;
    for (std::uint64_t t = 0; t < count; ++t) mom.add(draw(rng));
    parts[i] = mom;
  });
  Moments all;
  for (const auto& p : parts) all.merge(p);
  res.value = all.mean;
  res.std_error = std::sqrt(all.m2 / (all.n - 1) / all.n);
  return res;
}

/// Uniform double in (0, 1].
inline double unit_open_closed(std::mt19937_64& rng) { return double((rng() >> 11) + 1) * 0x1p-53; }

/// Estimates ∫_simplex Q/Ψ^{s/2} with Dirichlet(½,…,½) points; root_psi(x, scratch) returns √Ψ(x).
template <class RootPsi>
IntegralResult dirichlet_estimate(const CompiledPolynomial& q, const RootPsi& root_psi, unsigned s, std::size_t m,
                                  const MonteCarloOptions& opt) {
  // 1/density = π^{m/2}/Γ(m/2)·Π √x_e
  const double norm = std::exp(0.5 * double(m) * std::log(std::numbers::pi) - std::lgamma(0.5 * double(m)));
  return run_streams(opt, [&] {
    return [&, gamma = std::gamma_distribution<double>(0.5, 1.0), x = std::vector<double>(m),
            scratch = std::vector<double>()](std::mt19937_64& rng) mutable {
      double sum = 0;
      for (auto& v : x) {
        do v = gamma(rng);
        while (v <= 0);
        sum += v;
      }
      double weight = norm;
      for (auto& v : x) {
        v /= sum;
        weight *= std::sqrt(v);
      }
      double root = root_psi(x.data(), scratch);
      if (!(root > 0)) throw std::domain_error("Symanzik polynomial is not positive at a sample point");
      return q(x.data()) * weight / std::pow(root, double(s));
    };
  });
}

}  // namespace detail

/// Unnormalized ∫_{σ_m} Q·Ω_m/Ψ^{s/2} by Dirichlet(½) importance sampling.
inline IntegralResult dirichlet_integrate(const Polynomial& q, const Polynomial& psi, unsigned s, std::size_t m,
                                          const MonteCarloOptions& opt) {
  if (q.zero()) {
    IntegralResult r;
    r.reason = "zero numerator";
    return r;
  }
  if (q.variables() != m || psi.variables() != m) throw std::invalid_argument("variable count mismatch");
  if (!q.homogeneous() || !psi.homogeneous() ||
      2 * (q.total_degree() + long(m)) != long(s) * psi.total_degree())
    throw std::invalid_argument("integrand is not projective");
  CompiledPolynomial cq(q), cpsi(psi);
  auto root = [&](const double* x, std::vector<double>&) {
    double v = cpsi(x);
    return v > 0 ? std::sqrt(v) : 0.0;
  };
  return detail::dirichlet_estimate(cq, root, s, m, opt);
}

/// Same integral with Ψ taken as det Λ for the cycle basis c.
inline IntegralResult dirichlet_integrate(const Polynomial& q, const CycleBasisMatrix& c, unsigned s,
                                   const MonteCarloOptions& opt) {
  if (q.zero()) {
    IntegralResult r;
    r.reason = "zero numerator";
    return r;
  }
  if (q.variables() != c.edges) throw std::invalid_argument("variable count mismatch");
  if (!q.homogeneous() || 2 * (q.total_degree() + long(c.edges)) != long(s) * long(c.loops))
    throw std::invalid_argument("integrand is not projective");
  return detail::dirichlet_estimate(CompiledPolynomial(q), LaplacianRootPsi(c), s, c.edges, opt);
}

}  // namespace gc3
