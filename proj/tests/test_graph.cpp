#include "gc3/exact/dense.hpp"
#include "gc3/graph/canonical.hpp"
#include "gc3/graph/enumerate.hpp"
#include "gc3/graph/operations.hpp"
#include "gc3/io/data.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace gc3;

namespace {

using Mult = std::vector<std::vector<unsigned>>;

Mult permuted(const Mult& a, const std::vector<std::size_t>& p) {
  Mult b(a.size(), std::vector<unsigned>(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) b[p[i]][p[j]] = a[i][j];
  return b;
}

bool brute_isomorphic(const HalfEdgeGraph& g, const HalfEdgeGraph& h) {
  if (g.vertex_count != h.vertex_count || g.edge_count() != h.edge_count()) return false;
  auto a = g.multiplicities(), b = h.multiplicities();
  std::vector<std::size_t> p(g.vertex_count);
  std::iota(p.begin(), p.end(), 0);
  do
    if (permuted(a, p) == b) return true;
  while (std::next_permutation(p.begin(), p.end()));
  return false;
}

int perm_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

struct BruteAut {
  Integer count = 0;
  bool odd = false;
};

// Loopless graphs in the standard orientation: vertex permutations times multi-edge permutations,
// each vertex permutation acting with sign(π)·(−1)^{edges it reverses}.
BruteAut brute_automorphisms(const HalfEdgeGraph& g) {
  auto a = g.multiplicities();
  std::size_t n = g.vertex_count;
  Integer multi = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) multi *= factorial(a[i][j]);
  BruteAut out;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (permuted(a, p) != a) continue;
    out.count += multi;
    int s = perm_sign(p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j] && a[i][j] % 2) s = -s;
    if (s < 0) out.odd = true;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Random relabelling, edge shuffle and direction flips; returns the expected orientation sign.
std::pair<OrientedGraph, int> scramble(const OrientedGraph& g, std::mt19937_64& rng) {
  std::size_t n = g.vertex_count();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  auto edges = g.directed_edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  int sign = perm_sign(p);
  std::bernoulli_distribution flip(0.5);
  std::vector<std::pair<Vertex, Vertex>> out;
  for (auto [u, v] : edges) {
    Vertex a = Vertex(p[u]), b = Vertex(p[v]);
    if (flip(rng)) {
      std::swap(a, b);
      sign = -sign;
    }
    out.emplace_back(a, b);
  }
  return {OrientedGraph::from_edges(n, out), sign};
}

Integer matrix_tree_count(const HalfEdgeGraph& g) {
  std::size_t n = g.vertex_count;
  auto a = g.multiplicities();
  auto lap = zero_matrix<Rational>(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    long deg = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) deg += a[i][j];
    lap[i - 1][i - 1] = deg;
    for (std::size_t j = 1; j < n; ++j)
      if (j != i) lap[i - 1][j - 1] = -long(a[i][j]);
  }
  return rational_determinant(lap).get_num();
}

}  // namespace

TEST_CASE("adjacency strings round-trip") {
  for (const char* s : {"111|", "123|23|3|", "123|24|5|45|5|", "456|346|356|6|5|6|"}) {
    auto g = parse_adjacency(s);
    CHECK(to_adjacency(g) == s);
  }
  auto k4 = parse_adjacency("123|23|3|");
  CHECK(k4.vertex_count() == 4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.graph.loop_number() == 3);
  CHECK(k4.graph.degree() == -3);
  CHECK_THROWS_AS(parse_adjacency("1a|"), GraphError);
}

TEST_CASE("graph lists accept names and comments") {
  auto list = parse_graph_list("# header\nG1: 111|\n123|23|3|\n\n");
  REQUIRE(list.size() == 2);
  CHECK(list[0].name == "G1");
  CHECK(list[1].name.empty());
  CHECK(to_adjacency(list[1].graph) == "123|23|3|");
}

TEST_CASE("canonical keys agree with brute-force isomorphism") {
  auto list = load_graph_list();
  REQUIRE(list.size() == 288);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& g = list[pick(rng)].graph;
    const auto& h = list[pick(rng)].graph;
    bool same = canonical_key(g).key == canonical_key(h).key;
    CHECK(same == brute_isomorphic(g.graph, h.graph));
  }
  std::set<CanonicalKey> keys;
  for (const auto& ng : list) keys.insert(canonical_key(ng.graph).key);
  CHECK(keys.size() == 288);
}

TEST_CASE("orientation signs follow relabelling and edge reversal") {
  std::mt19937_64 rng(23);
  for (const char* s : {"111|", "123|23|3|", "123|24|5|45|5|", "456|346|356|6|5|6|", "112|46|56|4566|5||"}) {
    auto g = parse_adjacency(s);
    auto base = canonical_key(g);
    REQUIRE(base.sign != 0);
    CHECK(canonical_key(g.negated()).sign == -base.sign);
    for (int trial = 0; trial < 10; ++trial) {
      auto [h, expected] = scramble(g, rng);
      auto ks = canonical_key(h);
      CHECK(ks.key == base.key);
      CHECK(ks.sign == expected * base.sign);
    }
  }
}

TEST_CASE("automorphism counts and odd classes match brute force") {
  CHECK(automorphism_count(canonical_key(parse_adjacency("123|23|3|")).key) == Integer(24));
  CHECK(automorphism_count(canonical_key(parse_adjacency("111|")).key) == Integer(12));
  CHECK(canonical_key(parse_adjacency("1111|")).sign == 0);  // D4 is odd
  CHECK(canonical_key(parse_adjacency("011|")).sign == 0);   // self-loop
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{4, 7}, {5, 8}, {6, 9}}) {
    auto classes = enumerate_graphs(n, m);
    REQUIRE_FALSE(classes.empty());
    for (const auto& c : classes) {
      auto g = reference_graph(c.key);
      if (g.graph.has_self_loop()) continue;
      auto b = brute_automorphisms(g.graph);
      CHECK(c.odd == b.odd);
      if (!c.odd) CHECK(automorphism_count(c.key) == b.count);
    }
  }
}

TEST_CASE("spanning trees agree with the matrix-tree theorem") {
  for (const char* s : {"111|", "123|23|3|", "1122|2|", "123|24|5|45|5|", "345|345|345|||", "456|346|356|6|5|6|"}) {
    auto g = parse_adjacency(s).graph;
    CHECK(Integer(spanning_trees(g).size()) == matrix_tree_count(g));
  }
}

TEST_CASE("oriented cycle bases are integral bases of the cycle space") {
  for (const auto& ng : load_graph_list()) {
    auto c = oriented_cycle_basis(ng.graph);
    REQUIRE(long(c.loops) == ng.graph.graph.loop_number());
    CHECK(columns_are_cycles(ng.graph, c));
    CHECK(abs(cycle_basis_certificate(ng.graph, c)) == Integer(1));
  }
}

TEST_CASE("contraction and subdivision change the counts by one") {
  auto k4 = parse_adjacency("123|23|3|");
  for (EdgeIndex e = 0; e < k4.edge_count(); ++e) {
    auto q = contract_edge(k4, e);
    CHECK(q.vertex_count() == 3);
    CHECK(q.edge_count() == 5);
    CHECK(q.graph.loop_number() == 3);
  }
  auto s = subdivide_edge(k4, 0);
  CHECK(s.vertex_count() == 5);
  CHECK(s.edge_count() == 7);
  CHECK(has_two_valent_vertex(s.graph));
  CHECK_FALSE(has_two_valent_vertex(k4.graph));
}

TEST_CASE("Whitney flips keep the spanning trees") {
  auto g = parse_adjacency("112|46|56|4566|5||");  // G244, which has a 2-vertex cut
  auto cuts = whitney_cuts(g.graph);
  REQUIRE_FALSE(cuts.empty());
  auto trees = spanning_trees(g.graph);
  std::sort(trees.begin(), trees.end());
  for (const auto& cut : cuts) {
    auto h = whitney_flip(g, cut);
    CHECK(h.edge_count() == g.edge_count());
    auto t2 = spanning_trees(h.graph);
    std::sort(t2.begin(), t2.end());
    CHECK(t2 == trees);
  }
}

TEST_CASE("six-loop graded dimension") { CHECK(graded_basis(6, -6).size() == 288); }
