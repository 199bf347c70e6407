#include "gc3/complex/operations.hpp"
#include "gc3/integrate/exact.hpp"
#include "gc3/verify/table4.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

using namespace gc3;

namespace {

constexpr double pi = std::numbers::pi;

MonteCarloOptions mc(std::uint64_t samples, std::uint64_t seed = 1, Sampler sampler = Sampler::tropical) {
  MonteCarloOptions o;
  o.samples = samples;
  o.seed = seed;
  o.sampler = sampler;
  return o;
}

// ∫ Π x^{i−1} Ω / Ψ^{(2i+1)/2} for D_{2i+1} through the cut-edge propagator, with the numerator prefactor.
Rational dipole_by_cut(unsigned i) {
  std::size_t m = 2 * i + 1;
  auto g = dipole(m).graph;
  auto cut = cut_edge_integral(g, 0, std::vector<Rational>(m, Rational(i)), Rational(long(m)));
  REQUIRE(cut);
  Rational c = Rational(factorial(2 * i)) / Rational(Integer(1) << i) / Rational(factorial(i));
  if (i % 2) c = -c;
  HalfPiExact norm{Rational(Integer(i % 2 ? -1 : 1) << i), long(2 * i)};
  HalfPiExact r = HalfPiExact{c, 0} * *cut / norm;
  REQUIRE(r.p == 0);
  return r.q;
}

Polynomial product_of_variables(std::size_t m) {
  Polynomial p(m, Rational(1));
  for (std::size_t i = 0; i < m; ++i) p *= Polynomial::variable(m, i);
  return p;
}

}  // namespace

TEST_CASE("Gamma at half-integers") {
  CHECK(gamma_half(Rational(1))->q == Rational(1));
  CHECK(gamma_half(Rational(4))->q == Rational(6));
  auto h = *gamma_half(make_rational(5, 2));
  CHECK(h.q == make_rational(3, 4));
  CHECK(h.p == 1);
  CHECK_FALSE(gamma_half(Rational(0)));
  CHECK_FALSE(gamma_half(make_rational(1, 3)));
}

TEST_CASE("dipole integrals by two exact routes") {
  for (unsigned i = 1; i <= 4; ++i) {
    CHECK(dipole_exact(i) == Rational(1));
    CHECK(dipole_by_cut(i) == dipole_exact(i));
  }
  for (std::size_t m : {3u, 5u, 7u}) {
    auto r = canonical_integral(dipole(m), CanonicalFormSymbol::one(), mc(1000));
    CHECK(r.method == IntegralMethod::exact_dipole);
    CHECK(r.value == 1.0);
  }
}

TEST_CASE("theta integrand by Monte Carlo with both samplers") {
  auto theta = dipole(3);
  auto tn = top_numerator(theta, CanonicalFormSymbol::one());
  for (Sampler s : {Sampler::tropical, Sampler::dirichlet}) {
    auto r = mc_integrate(tn.q, theta.graph, tn.basis, tn.s, mc(200'000, 3, s));
    CHECK(r.method == IntegralMethod::monte_carlo);
    CHECK(std::abs(r.value + 2 * pi) <= 4 * r.std_error);
    CHECK(r.std_error < 0.05);
  }
}

TEST_CASE("Monte Carlo against the cut-edge route on D5") {
  auto d5 = dipole(5);
  auto basis = oriented_cycle_basis(d5);
  auto exact = cut_edge_integral(d5.graph, 0, std::vector<Rational>(5, Rational(2)), Rational(5));
  REQUIRE(exact);
  auto r = mc_integrate(product_of_variables(5), d5.graph, basis, 5, mc(200'000, 5));
  CHECK(std::abs(r.value - exact->value()) <= 4 * r.std_error);
}

TEST_CASE("graph and polynomial routes to Psi over its tropical part agree") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> wide(0.0, 150.0);
  for (const char* s : {"111|", "123|23|3|", "355|466|556|46|5||", "446|566|346|56|5||", "112|46|56|4566|5||"}) {
    auto g = parse_adjacency(s);
    auto basis = oriented_cycle_basis(g);
    GraphPsiRatio by_graph(g.graph, basis);
    PolynomialPsiRatio by_poly(spanning_tree_polynomial(g.graph));
    GraphPsiRatio::Scratch sg;
    PolynomialPsiRatio::Scratch sp;
    std::vector<double> logx(g.edge_count());
    for (int trial = 0; trial < 200; ++trial) {
      for (auto& v : logx) v = trial < 100 ? wide(rng) / 50 : wide(rng);
      double a = by_graph(logx.data(), sg), b = by_poly(logx.data(), sp);
      INFO(s << " trial " << trial);
      CHECK(a >= -1e-12);
      CHECK(a == Catch::Approx(b).margin(1e-9));
    }
  }
}

TEST_CASE("sample streams are deterministic") {
  auto g = parse_adjacency("355|466|556|46|5||");
  auto tn = top_numerator(g, CanonicalFormSymbol::beta(1));
  auto a = mc_integrate(tn.q, g.graph, tn.basis, tn.s, mc(20'000, 7));
  auto b = mc_integrate(tn.q, g.graph, tn.basis, tn.s, mc(20'000, 7));
  MonteCarloOptions threaded = mc(20'000, 7);
  threaded.jobs = 3;
  auto c = mc_integrate(tn.q, g.graph, tn.basis, tn.s, threaded);
  auto d = mc_integrate(tn.q, g.graph, tn.basis, tn.s, mc(20'000, 8));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value == c.value);
  CHECK(a.value != d.value);
}

TEST_CASE("each graph class draws its own streams") {
  auto a = parse_adjacency("355|466|556|46|5||"), b = parse_adjacency("335|466|556|46|5||");
  CHECK(graph_seed(1, canonical_key(a).key) == graph_seed(1, canonical_key(a.negated()).key));
  CHECK(graph_seed(1, canonical_key(a).key) != graph_seed(1, canonical_key(b).key));
  CHECK(graph_seed(1, canonical_key(a).key) != graph_seed(2, canonical_key(a).key));
}

TEST_CASE("standard error falls like the inverse square root of the samples") {
  auto theta = dipole(3);
  auto tn = top_numerator(theta, CanonicalFormSymbol::one());
  auto small = mc_integrate(tn.q, theta.graph, tn.basis, tn.s, mc(40'000, 2, Sampler::dirichlet));
  auto large = mc_integrate(tn.q, theta.graph, tn.basis, tn.s, mc(640'000, 2, Sampler::dirichlet));
  double ratio = large.std_error / small.std_error;
  CHECK(ratio == Catch::Approx(0.25).epsilon(0.2));
}

TEST_CASE("canonical integrals change sign with the orientation") {
  auto g = parse_adjacency("355|466|556|46|5||");
  auto w = CanonicalFormSymbol::beta(1);
  auto a = canonical_integral(g, w, mc(20'000));
  auto b = canonical_integral(g.negated(), w, mc(20'000));
  CHECK(a.method == IntegralMethod::monte_carlo);
  CHECK(b.value == -a.value);
  CHECK(b.std_error == a.std_error);
}

TEST_CASE("vanishing integrals are exact zeros") {
  auto w = CanonicalFormSymbol::beta(1);
  // G97: nonzero numerator, but a Whitney flip reverses the orientation
  auto g97 = canonical_integral(parse_adjacency("446|566|346|56|5||"), w, mc(1000));
  CHECK(g97.method == IntegralMethod::exact_zero);
  CHECK(g97.value == 0.0);
  auto odd = canonical_integral(parse_adjacency("123|23|3|"), CanonicalFormSymbol::one(), mc(1000));
  CHECK(odd.method == IntegralMethod::exact_zero);
}

TEST_CASE("period basis reproduces the table column") {
  for (const auto& row : load_table4()) {
    INFO(row.name);
    CHECK(std::abs(double(tau1_from_lambda(row.lambda)) - row.tau1) <= 5.01e-6);
  }
  CHECK(double(tau1_of_x_closed_form()) == Catch::Approx(77.78251253).margin(1e-8));
  CHECK(double(periods::zeta3()) == Catch::Approx(1.2020569031595942).margin(1e-15));
  CHECK(double(periods::catalan()) == Catch::Approx(0.915965594177219).margin(1e-14));
  CHECK(double(periods::li4_half()) == Catch::Approx(0.5174790616738994).margin(1e-14));
}

TEST_CASE("cache replay draws no new samples") {
  auto path = std::filesystem::temp_directory_path() / "gc3_cache_replay_test.jsonl";
  std::filesystem::remove(path);
  auto table = load_table4();
  std::vector<Table4Row> rows = {table[1], table[2]};
  std::vector<NamedGraph> graphs;
  for (const auto& r : rows) graphs.push_back({r.name, r.graph});
  auto numerators = numerator_census(graphs);
  Table4Options opt;
  opt.mc = mc(5'000);
  Table4Result first, second;
  {
    IntegralCache cache(path.string());
    first = compute_table4(graphs, numerators, rows, opt, &cache);
  }
  {
    IntegralCache cache(path.string());
    second = compute_table4(graphs, numerators, rows, opt, &cache);
  }
  CHECK(first.new_samples > 0);
  CHECK(second.new_samples == 0);
  REQUIRE(first.rows.size() == second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(second.rows[i].from_cache);
    CHECK(first.rows[i].result.value == second.rows[i].result.value);
    CHECK(first.rows[i].result.std_error == second.rows[i].result.std_error);
  }
  std::filesystem::remove(path);
}

TEST_CASE("budget exhaustion skips rows") {
  auto table = load_table4();
  std::vector<Table4Row> rows = {table[1], table[2]};
  std::vector<NamedGraph> graphs;
  for (const auto& r : rows) graphs.push_back({r.name, r.graph});
  Table4Options opt;
  opt.mc = mc(5'000);
  opt.budget = 6'000;
  auto run = compute_table4(graphs, numerator_census(graphs), rows, opt);
  CHECK_FALSE(run.rows[0].skipped);
  CHECK(run.rows[1].skipped);
}
