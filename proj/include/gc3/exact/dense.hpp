#pragma once

#include "gc3/exact/ring.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gc3 {

template <class R>
using Matrix = std::vector<std::vector<R>>;

template <class R>
Matrix<R> zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix<R>(rows, std::vector<R>(cols, Ring<R>::zero()));
}

template <class R>
Matrix<R> multiply(const Matrix<R>& a, const Matrix<R>& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Matrix<R> c = zero_matrix<R>(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (is_zero(a[i][t])) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero(b[t][j])) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

template <class R>
Matrix<R> transpose(const Matrix<R>& a) {
  std::size_t n = a.size(), m = n ? a[0].size() : 0;
  Matrix<R> t = zero_matrix<R>(m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

namespace detail {

// Division-free determinant of the submatrix on `rows` (in order) and all
// columns except those in `skip`, by dynamic programming over column subsets.
template <class R>
R subset_det(const Matrix<R>& a, const std::vector<std::size_t>& rows, std::uint32_t skip) {
  std::size_t n = a.empty() ? 0 : a[0].size();
  if (n > 20) throw std::length_error("matrix too large for subset determinant");
  std::vector<std::uint32_t> level{0};
  std::vector<R> f(std::size_t(1) << n, Ring<R>::zero());
  std::vector<char> live(f.size(), 0);
  f[0] = Ring<R>::one();
  live[0] = 1;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t s : level) {
      if (!live[s]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t bit = std::uint32_t(1) << j;
        if ((s & bit) || (skip & bit)) continue;
        const R& e = a[rows[k]][j];
        if (is_zero(e)) continue;
        int above = __builtin_popcount(s >> (j + 1));
        R term = f[s] * e;
        std::uint32_t t = s | bit;
        if (!live[t]) {
          live[t] = 1;
          f[t] = Ring<R>::zero();
          next.push_back(t);
        }
        if (above & 1)
          f[t] -= term;
        else
          f[t] += term;
      }
      live[s] = 0;
      f[s] = Ring<R>::zero();
    }
    level = std::move(next);
  }
  std::uint32_t full = ((std::uint32_t(1) << n) - 1) & ~skip;
  return live[full] ? f[full] : Ring<R>::zero();
}

}  // namespace detail

template <class R>
R determinant(const Matrix<R>& a) {
  std::size_t n = a.size();
  if (n == 0) return Ring<R>::one();
  if (a[0].size() != n) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return detail::subset_det(a, rows, 0);
}

/// Adjugate (transpose of the cofactor matrix), division-free.
template <class R>
Matrix<R> adjugate(const Matrix<R>& a) {
  std::size_t n = a.size();
  Matrix<R> adj = zero_matrix<R>(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj[0][0] = Ring<R>::one();
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (r != i) rows.push_back(r);
    for (std::size_t j = 0; j < n; ++j) {
      R minor = detail::subset_det(a, rows, std::uint32_t(1) << j);
      adj[j][i] = ((i + j) % 2) ? R(-minor) : minor;
    }
  }
  return adj;
}

/// Determinant over Q by fraction-preserving Gaussian elimination.
inline Rational rational_determinant(Matrix<Rational> a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace gc3
