#pragma once

#include "gc3/exact/dense.hpp"
#include "gc3/forms/pfaffian.hpp"

#include <map>
#include <vector>

namespace gc3 {

/// Matrix of scalars times matrix of forms.
template <class E>
Matrix<E> scalar_multiply(const Matrix<typename E::scalar_type>& a, const Matrix<E>& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Matrix<E> c(n, std::vector<E>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (is_zero(a[i][t])) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero(b[t][j])) c[i][j] += b[t][j].scaled(a[i][t]);
    }
  return c;
}

/// Pf(dX · A · dX) for a matrix dX of 1-forms and a symmetric scalar matrix A
/// (A = X⁻¹ at a point, or adj X symbolically).
template <class E>
E pfaffian_numerator(const Matrix<E>& dx, const Matrix<typename E::scalar_type>& a) {
  return pfaffian(multiply(dx, scalar_multiply(a, dx)));
}

/// tr((A·dX)^r) for every r in `powers` (odd, increasing), sharing the matrix powers.
template <class E>
std::map<unsigned, E> trace_powers(const Matrix<E>& dx, const Matrix<typename E::scalar_type>& a,
                                   const std::vector<unsigned>& powers) {
  std::map<unsigned, E> out;
  if (powers.empty()) return out;
  Matrix<E> m = scalar_multiply(a, dx);
  Matrix<E> p = m;
  unsigned have = 1;
  std::size_t n = m.size();
  for (unsigned r : powers) {
    E tr;
    if (r == 1) {
      for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
    } else {
      while (have + 1 < r) {
        p = multiply(p, m);
        ++have;
      }
      // only the diagonal of the last product is needed
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t)
          if (!is_zero(p[i][t]) && !is_zero(m[t][i])) tr += p[i][t] * m[t][i];
    }
    out.emplace(r, std::move(tr));
  }
  return out;
}

/// Inverse over a field by Gauss-Jordan elimination; throws if singular.
template <class F>
Matrix<F> field_inverse(Matrix<F> a) {
  std::size_t n = a.size();
  Matrix<F> inv = zero_matrix<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = F(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    F f = F(1) / a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      F g = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

template <class F>
F field_determinant(Matrix<F> a) {
  std::size_t n = a.size();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) return F(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    F inv = F(1) / a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(a[r][c])) continue;
      F f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace gc3
