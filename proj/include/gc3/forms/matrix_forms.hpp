#pragma once

#include "gc3/exact/flat_form.hpp"
#include "gc3/exact/modular.hpp"
#include "gc3/forms/invariant.hpp"
#include "gc3/forms/laplacian.hpp"

#include <random>

namespace gc3 {

enum class MatrixFormKind { pfaffian, beta, volume };

/// Value form·(√det X₀)^{sqrt_det_power}; the power is folded away when det X₀ is a rational square.
template <class F>
struct PointForm {
  FlatForm<F> form;
  int sqrt_det_power = 0;
};

/// Index of dX_{ij} (i ≤ j) in lexicographic order.
inline unsigned symmetric_generator(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return unsigned(i * n - i * (i - 1) / 2 + (j - i));
}

template <class F>
Matrix<FlatForm<F>> symmetric_differential(std::size_t n) {
  Matrix<FlatForm<F>> d(n, std::vector<FlatForm<F>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = FlatForm<F>::generator(symmetric_generator(n, i, j));
  return d;
}

inline bool positive_definite(const Matrix<Rational>& x) {
  for (std::size_t k = 1; k <= x.size(); ++k) {
    Matrix<Rational> lead(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = x[i][j];
    if (sgn(rational_determinant(lead)) <= 0) return false;
  }
  return true;
}

namespace detail {

template <class F>
Matrix<F> convert_matrix(const Matrix<Rational>& x) {
  Matrix<F> out(x.size(), std::vector<F>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i][j] = F(x[i][j]);
  return out;
}

/// ι_E(dX_{11} ∧ dX_{12} ∧ … ∧ dX_{nn}) at X₀.
template <class F>
FlatForm<F> euler_contracted_volume(const Matrix<F>& x) {
  std::size_t n = x.size(), gens = n * (n + 1) / 2;
  GeneratorSet all = (GeneratorSet(1) << gens) - 1;
  typename FlatForm<F>::Accumulator acc(all);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      unsigned a = symmetric_generator(n, i, j);
      F v = (a % 2) ? F(-x[i][j]) : x[i][j];
      acc.add(all & ~(GeneratorSet(1) << a), v);
    }
  return acc.take();
}

}  // namespace detail

/// φⁿ, β^{4k+1} or η^{n} at a symmetric positive definite point X₀ (n ≤ 6),
/// as an element of the exterior algebra on the dX_{ij}.
template <class F = Rational>
PointForm<F> matrix_form_at_point(MatrixFormKind kind, const Matrix<Rational>& x0, unsigned k = 1) {
  std::size_t n = x0.size();
  if (n == 0 || n > 6) throw FormError("matrix forms need 1 <= n <= 6");
  for (std::size_t i = 0; i < n; ++i) {
    if (x0[i].size() != n) throw FormError("point is not a square matrix");
    for (std::size_t j = 0; j < n; ++j)
      if (x0[i][j] != x0[j][i]) throw FormError("point is not symmetric");
  }
  if (!positive_definite(x0)) throw FormError("point is not positive definite");
  Matrix<F> x = detail::convert_matrix<F>(x0);
  auto d = symmetric_differential<F>(n);
  PointForm<F> out;
  switch (kind) {
    case MatrixFormKind::pfaffian:
      if (n % 2) return out;
      out.form = pfaffian_numerator(d, field_inverse(x));
      out.sqrt_det_power = -1;
      break;
    case MatrixFormKind::beta: {
      unsigned r = 4 * k + 1;
      out.form = trace_powers(d, field_inverse(x), {r}).at(r);
      break;
    }
    case MatrixFormKind::volume:
      out.form = detail::euler_contracted_volume(x);
      out.sqrt_det_power = -int(n + 1);
      break;
  }
  if constexpr (std::is_same_v<F, Rational>) {
    Rational det = rational_determinant(x0), root;
    if (out.sqrt_det_power != 0 && exact_sqrt(det, root)) {
      Rational f = gc3::pow(root, unsigned(-out.sqrt_det_power));
      out.form = out.form.scaled(Rational(1) / f);
      out.sqrt_det_power = 0;
    }
  }
  return out;
}

namespace detail {

/// Random symmetric positive definite integer matrix AᵀA + I.
inline Matrix<Rational> random_spd(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-3, 3);
  Matrix<long> a(n, std::vector<long>(n));
  for (auto& row : a)
    for (auto& v : row) v = dist(rng);
  Matrix<Rational> x(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long s = i == j ? 1 : 0;
      for (std::size_t t = 0; t < n; ++t) s += a[t][i] * a[t][j];
      x[i][j] = Rational(s);
    }
  return x;
}

template <class F>
std::optional<F> volume_ratio(std::size_t n, const Matrix<Rational>& x0) {
  PointForm<F> lhs{FlatForm<F>::scalar(F(1)), 0};
  for (unsigned k = 1; k < n; ++k) {
    auto b = matrix_form_at_point<F>(MatrixFormKind::beta, x0, k);
    lhs.form = lhs.form * b.form;
  }
  auto phi = matrix_form_at_point<F>(MatrixFormKind::pfaffian, x0);
  lhs.form = lhs.form * phi.form;
  lhs.sqrt_det_power = phi.sqrt_det_power;
  PointForm<F> rhs = matrix_form_at_point<F>(MatrixFormKind::volume, x0);
  if (rhs.form.zero()) return std::nullopt;
  // lhs = c·rhs as forms; bring both to the same power of √det
  int shift = lhs.sqrt_det_power - rhs.sqrt_det_power;  // even
  F det = field_determinant(convert_matrix<F>(x0));
  F factor(1);
  for (int i = 0; i < std::abs(shift) / 2; ++i) factor *= det;
  FlatForm<F> r = shift >= 0 ? rhs.form.scaled(F(1) / factor) : rhs.form.scaled(factor);
  const auto& [set, rc] = r.terms().front();
  F c = lhs.form.coefficient(set) / rc;
  if (lhs.form != r.scaled(c)) throw FormError("forms are not proportional at the probe point");
  return c;
}

}  // namespace detail

/// c_n with β⁵ ∧ … ∧ β^{4n−3} ∧ φ^{2n} = c_n η^{2n}, from two random probe points.
/// Exact over Q for n ≤ 2; n = 3 runs modulo p and lifts the ratio.
inline Rational volume_constant(unsigned n, std::uint64_t seed = 7) {
  if (n < 1 || n > 3) throw FormError("volume constants are available for n = 1, 2, 3");
  std::mt19937_64 rng(seed);
  std::optional<Rational> found;
  for (int probe = 0, ok = 0; probe < 8 && ok < 2; ++probe) {
    Matrix<Rational> x0 = detail::random_spd(2 * n, rng);
    std::optional<Rational> c;
    if (n <= 2) {
      c = detail::volume_ratio<Rational>(n, x0);
    } else {
      auto cm = detail::volume_ratio<ModP>(n, x0);
      if (cm) c = rational_reconstruction(*cm);
    }
    if (!c) continue;
    if (found && *found != *c) throw FormError("volume constant differs between probe points");
    found = c;
    ++ok;
  }
  if (!found) throw FormError("no usable probe point for the volume constant");
  return *found;
}

}  // namespace gc3
