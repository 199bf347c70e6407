#pragma once

#include "gc3/graph/canonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace gc3 {

struct EnumerationLimits {
  std::size_t max_vertices = 10;
  std::size_t max_edges = 16;
};

struct GraphClass {
  CanonicalKey key;
  bool odd = false;
};

namespace detail {

using Adjacency = std::vector<std::vector<unsigned>>;

inline Adjacency key_matrix(const CanonicalKey& key) {
  std::size_t n = key.vertex_count();
  Adjacency a(n, std::vector<unsigned>(n, 0));
  std::size_t idx = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a[i][j] = a[j][i] = std::uint8_t(key.bytes[idx++]);
  return a;
}

inline std::size_t valence_deficit(const Adjacency& a) {
  std::size_t deficit = 0;
  for (const auto& row : a) {
    std::size_t d = 0;
    for (unsigned x : row) d += x;
    if (d < 3) deficit += 3 - d;
  }
  return deficit;
}

inline bool matrix_connected(const Adjacency& a) {
  std::size_t n = a.size();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v)
      if (a[u][v] && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace detail

/// Connected loopless multigraphs with n vertices, m edges and every valence ≥ 3,
/// one entry per isomorphism class, sorted by key; `odd` marks classes with an
/// odd automorphism (which vanish in GC₃).
inline std::vector<GraphClass> enumerate_graphs(std::size_t n, std::size_t m, EnumerationLimits limits = {}) {
  if (n > limits.max_vertices || m > limits.max_edges) throw std::length_error("enumeration caps exceeded");
  std::vector<GraphClass> out;
  if (n < 2 || 2 * m < 3 * n || m + 1 < n) return out;

  // simple graphs by single-edge augmentation, deduplicated by canonical key
  std::vector<detail::Adjacency> simple;
  {
    std::vector<detail::Adjacency> level{detail::Adjacency(n, std::vector<unsigned>(n, 0))};
    std::size_t max_simple = std::min(m, n * (n - 1) / 2);
    for (std::size_t e = 0;; ++e) {
      for (const auto& a : level)
        if (e + 1 >= n && detail::matrix_connected(a)) simple.push_back(a);
      if (e == max_simple) break;
      std::unordered_set<CanonicalKey> seen;
      std::vector<detail::Adjacency> next;
      for (const auto& a : level)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i][j]) continue;
            detail::Adjacency b = a;
            b[i][j] = b[j][i] = 1;
            if (detail::valence_deficit(b) > 2 * (m - e - 1)) continue;
            auto key = canonical_labeling(b).key;
            if (seen.insert(key).second) next.push_back(detail::key_matrix(key));
          }
      level = std::move(next);
    }
  }

  std::unordered_set<CanonicalKey> found;
  for (const auto& s : simple) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (s[i][j]) pairs.emplace_back(i, j);
    std::size_t extra = m - pairs.size();
    detail::Adjacency a = s;
    auto rec = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
      if (idx + 1 == pairs.size() || left == 0) {
        auto [i, j] = pairs[idx];
        a[i][j] += unsigned(left);
        a[j][i] += unsigned(left);
        if (detail::valence_deficit(a) == 0) {
          Labeling lab = canonical_labeling(a);
          if (found.insert(lab.key).second) out.push_back({lab.key, lab.odd});
        }
        a[i][j] -= unsigned(left);
        a[j][i] -= unsigned(left);
        return;
      }
      auto [i, j] = pairs[idx];
      for (std::size_t t = 0; t <= left; ++t) {
        a[i][j] += unsigned(t);
        a[j][i] += unsigned(t);
        self(self, idx + 1, left - t);
        a[i][j] -= unsigned(t);
        a[j][i] -= unsigned(t);
      }
    };
    rec(rec, 0, extra);
  }
  std::sort(out.begin(), out.end(), [](const GraphClass& x, const GraphClass& y) { return x.key < y.key; });
  return out;
}

/// Classes without odd automorphisms in bidegree (ℓ, k), i.e. a basis of gr_{ℓ,k} GC₃.
inline std::vector<CanonicalKey> graded_basis(long loops, long degree, EnumerationLimits limits = {}) {
  long m = degree + 3 * loops;
  long n = m - loops + 1;
  std::vector<CanonicalKey> out;
  if (m <= 0 || n < 2) return out;
  for (auto& c : enumerate_graphs(std::size_t(n), std::size_t(m), limits))
    if (!c.odd) out.push_back(c.key);
  return out;
}

}  // namespace gc3
