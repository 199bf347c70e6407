#pragma once

#include "gc3/exact/dense.hpp"
#include "gc3/exact/exterior.hpp"

#include <stdexcept>
#include <unordered_map>

namespace gc3 {

/// Pfaffian of a skew-symmetric matrix over a commutative ring (for exterior
/// algebras: entries of even degree), by expansion along the first remaining
/// row with memoization on index subsets. Odd dimension gives 0.
template <class R>
R pfaffian(const Matrix<R>& m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("pfaffian of non-square matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_zero(m[i][i])) throw std::invalid_argument("pfaffian of non-skew matrix");
    for (std::size_t j = i + 1; j < n; ++j) {
      R sum = m[i][j] + m[j][i];
      if (!is_zero(sum)) throw std::invalid_argument("pfaffian of non-skew matrix");
    }
  }
  if (n % 2) return Ring<R>::zero();
  if (n == 0) return Ring<R>::one();
  if (n > 30) throw std::length_error("pfaffian dimension too large");

  std::unordered_map<std::uint32_t, R> memo;
  auto rec = [&](auto&& self, std::uint32_t s) -> R {
    if (s == 0) return Ring<R>::one();
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    unsigned i = __builtin_ctz(s);
    std::uint32_t rest = s & (s - 1);
    R acc = Ring<R>::zero();
    int pos = 0;
    for (std::uint32_t r = rest; r; r &= r - 1) {
      unsigned j = __builtin_ctz(r);
      ++pos;
      if (is_zero(m[i][j])) continue;
      R sub = self(self, rest & ~(std::uint32_t(1) << j));
      if (is_zero(sub)) continue;
      R term = m[i][j] * sub;
      if (pos % 2)
        acc += term;
      else
        acc -= term;
    }
    memo.emplace(s, acc);
    return acc;
  };
  return rec(rec, (n == 32) ? ~std::uint32_t(0) : ((std::uint32_t(1) << n) - 1));
}

}  // namespace gc3
