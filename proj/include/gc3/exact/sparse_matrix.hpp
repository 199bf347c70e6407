#pragma once

#include "gc3/exact/rational.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gc3 {

class SparseRationalMatrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (sgn(v) == 0)
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }

  void add(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (sgn(v) == 0) return;
    auto [it, fresh] = data_[r].try_emplace(c, v);
    if (!fresh) {
      it->second += v;
      if (sgn(it->second) == 0) data_[r].erase(it);
    }
  }

  Rational get(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational(0) : it->second;
  }

  const Row& row(std::size_t r) const { return data_.at(r); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  SparseRationalMatrix transposed() const {
    SparseRationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c][r] = v;
    return t;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Row> data_;
};

namespace detail {

struct Echelon {
  std::vector<SparseRationalMatrix::Row> pivot_rows;  // normalized, pivot entry 1
  std::vector<std::size_t> pivot_cols;
};

inline void axpy(SparseRationalMatrix::Row& target, const Rational& factor,
                 const SparseRationalMatrix::Row& source) {
  for (const auto& [c, v] : source) {
    auto [it, fresh] = target.try_emplace(c, 0);
    it->second -= factor * v;
    if (sgn(it->second) == 0) target.erase(it);
  }
}

// Column-by-column elimination; the pivot for each column is the candidate
// row of least entry height, ties broken by row length and then row index.
inline Echelon eliminate(const SparseRationalMatrix& m, bool reduced) {
  std::vector<SparseRationalMatrix::Row> work;
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) work.push_back(m.row(r));

  std::vector<std::vector<std::size_t>> by_col(m.cols());
  for (std::size_t i = 0; i < work.size(); ++i)
    for (const auto& kv : work[i]) by_col[kv.first].push_back(i);

  std::vector<char> used(work.size(), 0);
  Echelon out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::size_t best_h = 0, best_len = 0;
    std::vector<std::size_t> live;
    for (std::size_t i : by_col[c]) {
      if (used[i]) continue;
      auto it = work[i].find(c);
      if (it == work[i].end()) continue;
      live.push_back(i);
      std::size_t h = height(it->second), len = work[i].size();
      if (best == std::numeric_limits<std::size_t>::max() || h < best_h ||
          (h == best_h && (len < best_len || (len == best_len && i < best)))) {
        best = i;
        best_h = h;
        best_len = len;
      }
    }
    if (best == std::numeric_limits<std::size_t>::max()) continue;
    used[best] = 1;
    Rational inv = 1 / work[best].at(c);
    for (auto& kv : work[best]) kv.second *= inv;
    const auto& prow = work[best];
    for (std::size_t i : live) {
      if (i == best) continue;
      auto it = work[i].find(c);
      if (it == work[i].end()) continue;
      Rational f = it->second;
      axpy(work[i], f, prow);
      for (const auto& kv : prow)
        if (kv.first > c && work[i].count(kv.first)) by_col[kv.first].push_back(i);
    }
    if (reduced) {
      for (std::size_t k = 0; k < out.pivot_rows.size(); ++k) {
        auto it = out.pivot_rows[k].find(c);
        if (it == out.pivot_rows[k].end()) continue;
        Rational f = it->second;
        axpy(out.pivot_rows[k], f, prow);
      }
    }
    out.pivot_rows.push_back(prow);
    out.pivot_cols.push_back(c);
    by_col[c].clear();
    for (const auto& kv : prow) {
      auto& lst = by_col[kv.first];
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
  }
  return out;
}

}  // namespace detail

inline std::size_t rank(const SparseRationalMatrix& m) {
  return detail::eliminate(m, false).pivot_cols.size();
}

/// Basis of the right kernel {v : M v = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseRationalMatrix& m) {
  auto ech = detail::eliminate(m, true);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : ech.pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) {
      auto it = ech.pivot_rows[k].find(f);
      if (it != ech.pivot_rows[k].end()) v[ech.pivot_cols[k]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves M x = b for one particular solution; returns false if inconsistent.
inline bool solve(const SparseRationalMatrix& m, const std::vector<Rational>& b,
                  std::vector<Rational>& x) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side size mismatch");
  SparseRationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
    aug.set(r, m.cols(), b[r]);
  }
  auto ech = detail::eliminate(aug, true);
  x.assign(m.cols(), Rational(0));
  for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) {
    if (ech.pivot_cols[k] == m.cols()) return false;
    auto it = ech.pivot_rows[k].find(m.cols());
    if (it != ech.pivot_rows[k].end()) x[ech.pivot_cols[k]] = it->second;
  }
  return true;
}

}  // namespace gc3
