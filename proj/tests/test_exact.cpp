#include "gc3/exact/dense.hpp"
#include "gc3/exact/exterior.hpp"
#include "gc3/exact/modular.hpp"
#include "gc3/exact/polynomial.hpp"
#include "gc3/exact/sparse_matrix.hpp"
#include "gc3/forms/pfaffian.hpp"

#include <catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace gc3;

namespace {

Matrix<Rational> random_skew(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  auto m = zero_matrix<Rational>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = d(rng);
      m[j][i] = -m[i][j];
    }
  return m;
}

// Sum over perfect matchings, each with the sign of its permutation.
Rational matching_pfaffian(const Matrix<Rational>& a) {
  std::size_t n = a.size();
  std::vector<std::size_t> perm;
  std::vector<char> used(n, 0);
  Rational total = 0;
  std::function<void()> rec = [&] {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      int inversions = 0;
      for (std::size_t x = 0; x < perm.size(); ++x)
        for (std::size_t y = x + 1; y < perm.size(); ++y) inversions += perm[x] > perm[y];
      Rational term = inversions % 2 ? -1 : 1;
      for (std::size_t k = 0; k < perm.size(); k += 2) term *= a[perm[k]][perm[k + 1]];
      total += term;
      return;
    }
    used[i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      perm.push_back(i);
      perm.push_back(j);
      rec();
      perm.pop_back();
      perm.pop_back();
      used[j] = 0;
    }
    used[i] = 0;
  };
  rec();
  return total;
}

std::size_t dense_rank(Matrix<Rational> a) {
  std::size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || is_zero(a[r][c])) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(make_rational(4, -6) == make_rational(-2, 3));
  CHECK(parse_rational("-10/4") == make_rational(-5, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK(factorial(10) == Integer(3628800));
  CHECK(binomial(6, 3) == Integer(20));
}

TEST_CASE("pfaffian agrees with the matching expansion and squares to the determinant") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {0u, 2u, 4u, 6u, 8u}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto m = random_skew(n, rng);
      Rational pf = pfaffian(m);
      CHECK(pf == matching_pfaffian(m));
      CHECK(pf * pf == rational_determinant(m));
    }
  }
  auto odd = random_skew(5, rng);
  CHECK(is_zero(pfaffian(odd)));
  auto bad = random_skew(4, rng);
  bad[0][1] += 1;
  CHECK_THROWS(pfaffian(bad));
}

TEST_CASE("sparse rank and kernel match dense elimination") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-3, 3);
  std::bernoulli_distribution sparse(0.4);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 1 + trial % 7, cols = 1 + (trial * 5) % 9;
    SparseRationalMatrix s(rows, cols);
    auto dense = zero_matrix<Rational>(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (sparse(rng)) {
          dense[r][c] = d(rng);
          s.set(r, c, dense[r][c]);
        }
    std::size_t rk = rank(s);
    CHECK(rk == dense_rank(dense));
    auto ker = kernel_basis(s);
    CHECK(ker.size() == cols - rk);
    for (const auto& v : ker)
      for (std::size_t r = 0; r < rows; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc += dense[r][c] * v[c];
        CHECK(is_zero(acc));
      }
  }
}

TEST_CASE("linear solve finds a particular solution or reports inconsistency") {
  SparseRationalMatrix m(2, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  m.set(1, 0, 2);
  m.set(1, 1, 2);
  std::vector<Rational> x;
  CHECK(solve(m, {3, 6}, x));
  CHECK(x[0] + x[1] == Rational(3));
  CHECK_FALSE(solve(m, {3, 5}, x));
}

TEST_CASE("polynomial arithmetic") {
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  auto sq = (x + y) * (x + y);
  CHECK(sq == x * x + Polynomial(2, Rational(2)) * x * y + y * y);
  CHECK(sq == (x + y).pow(2));
  CHECK(sq.homogeneous());
  Polynomial q;
  CHECK(sq.divide_exact(x + y, q));
  CHECK(q == x + y);
  CHECK_FALSE(sq.divide_exact(x - y, q));
  CHECK(sq.derivative(0) == Polynomial(2, Rational(2)) * (x + y));
  CHECK(sq.evaluate(std::vector<Rational>{1, 2}) == Rational(9));
  CHECK(sq.substitute(1, 0) == x * x);
  CHECK((sq - sq).zero());
}

TEST_CASE("exterior algebra is graded commutative") {
  using E = ExteriorElement<Rational>;
  auto a = E::generator(0), b = E::generator(1), c = E::generator(2);
  CHECK((a * a).zero());
  CHECK(a * b == -(b * a));
  CHECK((a * b) * c == a * (b * c));
  CHECK((a * b * c).degree() == 3);
  auto ab = a * b;
  CHECK(ab * c == c * ab);  // degree 2 commutes with everything
  CHECK(wedge_sign(0b010, 0b001) == -1);
  CHECK(wedge_sign(0b001, 0b010) == 1);
}

TEST_CASE("arithmetic modulo the Mersenne prime") {
  ModP a(123456789), b(-5);
  CHECK((a * a.inverse()).value() == 1);
  CHECK((b + ModP(5)).value() == 0);
  CHECK(a.pow(ModP::p - 1).value() == 1);
  for (auto q : {make_rational(-7, 3), make_rational(1234567, 89), Rational(0), make_rational(-1, 999983)}) {
    auto back = rational_reconstruction(ModP(q));
    REQUIRE(back);
    CHECK(*back == q);
  }
}
