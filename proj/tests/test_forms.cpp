#include "gc3/complex/operations.hpp"
#include "gc3/forms/matrix_forms.hpp"
#include "gc3/verify/form_properties.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace gc3;

namespace {

// φ∧ω from the symbolic form against Q·Ω_m/Ψ^{s/2} from top_numerator, up to Ψ powers.
bool numerator_routes_agree(const OrientedGraph& g, const CanonicalFormSymbol& w) {
  auto tn = top_numerator(g, w);
  auto f = graph_form(g, tn.basis, w);
  PolyForm lhs = f.numerator, rhs = simplex_form(g.edge_count()).scaled(tn.q);
  long d = (long(f.s) - long(tn.s)) / 2;
  if (d >= 0)
    rhs = rhs.scaled(f.base.pow(unsigned(d)));
  else
    lhs = lhs.scaled(f.base.pow(unsigned(-d)));
  return lhs == rhs;
}

}  // namespace

TEST_CASE("Symanzik polynomial equals the spanning-tree sum") {
  for (const auto& ng : form_property_corpus()) {
    if (!ng.graph.graph.connected()) continue;
    CHECK(symanzik(ng.graph) == spanning_tree_polynomial(ng.graph.graph));
  }
}

TEST_CASE("theta and dipole numerators") {
  auto theta = top_numerator(dipole(3), CanonicalFormSymbol::one());
  CHECK(theta.s == 3);
  CHECK(theta.q == Polynomial(3, Rational(-1)));
  CHECK(numerator_routes_agree(dipole(3), CanonicalFormSymbol::one()));
  CHECK(numerator_routes_agree(dipole(5), CanonicalFormSymbol::one()));
}

TEST_CASE("numerators are orientation covariant") {
  for (const char* s : {"111|", "11111|", "112|46|56|4566|5||"}) {
    auto g = parse_adjacency(s);
    auto w = g.edge_count() > 5 ? CanonicalFormSymbol::beta(1) : CanonicalFormSymbol::one();
    CHECK(top_numerator(g.negated(), w).q == -top_numerator(g, w).q);
  }
}

TEST_CASE("odd loop numbers and wrong degrees give zero") {
  CHECK(top_numerator(parse_adjacency("123|23|3|"), CanonicalFormSymbol::beta(1)).q.zero());
  CHECK(pfaffian_form(parse_adjacency("123|23|3|"), oriented_cycle_basis(parse_adjacency("123|23|3|"))).zero());
  CHECK(top_numerator(dipole(3), CanonicalFormSymbol::beta(1)).q.zero());
}

TEST_CASE("matrix forms at a point") {
  std::mt19937_64 rng(13);
  for (std::size_t n : {2u, 4u}) {
    auto x = detail::random_spd(n, rng);
    auto pf = matrix_form_at_point(MatrixFormKind::pfaffian, x);
    CHECK_FALSE(pf.form.zero());
    CHECK((pf.form * pf.form).zero());
  }
  auto x3 = detail::random_spd(3, rng);
  CHECK(matrix_form_at_point(MatrixFormKind::pfaffian, x3).form.zero());
  Matrix<Rational> bad = {{1, 2}, {2, 1}};
  CHECK_THROWS_AS(matrix_form_at_point(MatrixFormKind::pfaffian, bad), FormError);
}

TEST_CASE("volume constants") {
  CHECK(volume_constant(1) == Rational(1));
  CHECK(volume_constant(2) == Rational(-180));
  CHECK(volume_constant(2, 99) == Rational(-180));
}

TEST_CASE("coproduct of canonical forms") {
  auto one = CanonicalFormSymbol::one();
  auto b5 = CanonicalFormSymbol::beta(1);
  auto d = coproduct(b5);
  REQUIRE(d.size() == 2);
  auto w = CanonicalFormSymbol::parse("b5^b9");
  CHECK(w.degree() == 14);
  CHECK(w.to_string() == "b5^b9");
  auto dw = coproduct(w);
  CHECK(dw.size() == 4);
  int mixed_signs = 0;
  for (const auto& t : dw)
    if (!t.left.is_one() && !t.right.is_one()) mixed_signs += t.sign;
  CHECK(mixed_signs == 0);  // b5 ⊗ b9 and −b9 ⊗ b5
  CHECK(one.is_one());
  CHECK_THROWS(CanonicalFormSymbol::parse("b6"));
}

TEST_CASE("Pfaffian form properties on small graphs") {
  FormPropertyOptions opt;
  std::vector<PropertyOutcome> out;
  for (const auto& ng : form_property_corpus()) {
    if (ng.graph.edge_count() > 7) continue;
    check_form_properties(ng, opt, out);
  }
  REQUIRE(out.size() > 40);
  for (const auto& o : out) {
    INFO(o.graph << ": " << o.property << " " << o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("block factorization and vanishing witnesses") {
  auto d3 = parse_adjacency("111|"), k4 = parse_adjacency("123|23|3|");
  CHECK(check_block_factorization("D3 join D3", d3, d3).ok);
  CHECK(check_block_factorization("D3 join K4", d3, k4).ok);
  for (const auto& w : vanishing_witnesses()) {
    INFO(w.condition);
    CHECK(top_numerator(w.graph, w.omega).q.zero());
  }
}
