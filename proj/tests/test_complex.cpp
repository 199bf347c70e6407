#include "gc3/complex/operations.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace gc3;

namespace {

Chain random_chain(long loops, long degree, std::mt19937_64& rng, std::size_t terms = 6) {
  auto basis = graded_basis(loops, degree);
  Chain c;
  if (basis.empty()) return c;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<long> coeff(-4, 4);
  for (std::size_t i = 0; i < terms; ++i) c += Chain::of_key(basis[pick(rng)], Rational(coeff(rng)));
  return c;
}

long degree_of(const Chain& c) { return c.bidegree()->degree; }

int sign_pow(long a) { return a % 2 ? -1 : 1; }

const Chain& d1() {
  static const Chain c = Chain::of(dipole(1));
  return c;
}

}  // namespace

TEST_CASE("chains parse and print") {
  Chain c = parse_chain("1/3 * 111|\n-2 * 123|23|3|\n");
  CHECK(c.size() == 2);
  CHECK(c.coefficient(parse_adjacency("111|")) == make_rational(1, 3));
  CHECK(parse_chain(format_chain(c)) == c);
  CHECK_THROWS_AS(parse_chain("x * 111|"), ComplexError);
}

TEST_CASE("odd graphs vanish and orientation flips the sign") {
  CHECK(Chain::of(parse_adjacency("1111|")).zero());
  auto k4 = parse_adjacency("123|23|3|");
  CHECK(Chain::of(k4) + Chain::of(k4.negated()) == Chain());
}

TEST_CASE("boundary of K4") {
  Chain d = boundary(Chain::of(parse_adjacency("123|23|3|")));
  CHECK(d == Chain::of(parse_adjacency("122|22|"), Rational(6)));
}

TEST_CASE("differentials square to zero") {
  std::mt19937_64 rng(29);
  for (auto [l, k] : {std::pair<long, long>{4, -4}, {5, -5}, {5, -6}, {6, -6}, {6, -5}}) {
    Chain c = random_chain(l, k, rng);
    CHECK(boundary(boundary(c)).zero());
  }
  for (auto [l, k] : {std::pair<long, long>{3, -4}, {4, -6}, {5, -8}, {4, -7}}) {
    Chain c = random_chain(l, k, rng);
    CHECK(coboundary(coboundary(c)).zero());
  }
}

TEST_CASE("coboundary is adjoint to the boundary") {
  for (auto [l, k] : {std::pair<long, long>{3, -4}, {4, -5}, {5, -7}}) {
    auto src = graded_basis(l, k), dst = graded_basis(l, k + 1);
    for (const auto& a : src)
      for (const auto& b : dst) {
        Chain q = Chain::of_key(a), g = Chain::of_key(b);
        CHECK(pairing(coboundary(q), g) == pairing(q, boundary(g)));
      }
  }
}

TEST_CASE("bracket is graded antisymmetric and satisfies Jacobi") {
  std::vector<Chain> gens = {d1(), Chain::of(dipole(3)), Chain::of(dipole(5)),
                             Chain::of(parse_adjacency("123|23|3|")), Chain::of(parse_adjacency("1122|2|"))};
  for (const auto& a : gens)
    for (const auto& b : gens) {
      long ka = degree_of(a), kb = degree_of(b);
      CHECK(bracket(a, b) == bracket(b, a) * Rational(-sign_pow(ka * kb)));
    }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Chain &a = gens[i], &b = gens[j], &c = gens[k];
        if (a.bidegree()->loops + b.bidegree()->loops + c.bidegree()->loops > 6) continue;
        long ka = degree_of(a), kb = degree_of(b);
        Chain lhs = bracket(a, bracket(b, c));
        Chain rhs = bracket(bracket(a, b), c) + bracket(b, bracket(a, c)) * Rational(sign_pow(ka * kb));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("small homology") {
  CHECK(homology_dimension(2, -3, Side::chain) == 1);
  CHECK(homology_dimension(3, -3, Side::chain) == 1);
  CHECK(homology_dimension(4, -4, Side::chain) == 0);
  CHECK(homology_dimension(3, -3, Side::cochain) == 1);
  CHECK(homology_dimension(2, -3, Side::cochain) == 1);
}

TEST_CASE("Maurer-Cartan residual vanishes through four loops") {
  CHECK(maurer_cartan_residual(2).zero());
  CHECK(maurer_cartan_residual(4).zero());
  // dropping the D5 term breaks it at four loops
  Chain xi = Chain::of(dipole(3), make_rational(1, 12));
  Chain r = coboundary(xi) + bracket(xi, xi) * make_rational(1, 2);
  CHECK_FALSE(r.truncated(4).zero());
}

TEST_CASE("cocycle check detects non-closed cochains") {
  // K4* is closed; T122* is not, since dK4 = 6 T122
  auto k4 = parse_adjacency("123|23|3|");
  CHECK(cocycle_check(dual_element(k4, 1), 3, -3));
  auto t = parse_adjacency("122|22|");
  CHECK_FALSE(cocycle_check(dual_element(t, 1), 3, -4));
}
