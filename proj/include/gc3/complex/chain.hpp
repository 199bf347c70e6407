#pragma once

#include "gc3/exact/rational.hpp"
#include "gc3/graph/canonical.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gc3 {

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Bidegree {
  long loops = 0;
  long degree = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

inline Bidegree bidegree_of(const CanonicalKey& key) {
  HalfEdgeGraph g = reference_graph(key).graph;
  return {g.loop_number(), g.degree()};
}

/// Finite rational combination of isomorphism classes; each class stands for
/// its reference orientation, so the oriented graph g contributes sign(g)·c.
class Chain {
 public:
  using Terms = std::map<CanonicalKey, Rational>;

  Chain() = default;

  static Chain of(const OrientedGraph& g, const Rational& c = 1) {
    Chain ch;
    ch.add(g, c);
    return ch;
  }

  static Chain of_key(const CanonicalKey& k, const Rational& c = 1) {
    Chain ch;
    ch.add_key(k, c);
    return ch;
  }

  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const CanonicalKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Coefficient of an oriented graph: c with chain ∋ c·g.
  Rational coefficient(const OrientedGraph& g) const {
    auto ks = canonical_key(g);
    return ks.sign == 0 ? Rational(0) : Rational(ks.sign) * coefficient(ks.key);
  }

  void add(const OrientedGraph& g, const Rational& c) {
    if (is_zero(c)) return;
    auto ks = canonical_key(g);
    if (ks.sign == 0) return;
    add_key(ks.key, ks.sign > 0 ? c : Rational(-c));
  }

  /// Adds c times the reference orientation of the class; odd classes are dropped.
  void add_key(const CanonicalKey& k, const Rational& c) {
    if (is_zero(c)) return;
    if (ClassRegistry::instance().info(k).odd) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Chain& operator+=(const Chain& o) {
    for (const auto& [k, c] : o.terms_) add_trusted(k, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    for (const auto& [k, c] : o.terms_) add_trusted(k, -c);
    return *this;
  }
  Chain& operator*=(const Rational& f) {
    if (is_zero(f)) terms_.clear();
    for (auto& t : terms_) t.second *= f;
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator-(Chain a) { return a *= Rational(-1); }
  friend Chain operator*(const Rational& f, Chain a) { return a *= f; }
  friend Chain operator*(Chain a, const Rational& f) { return a *= f; }
  friend bool operator==(const Chain& a, const Chain& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }

  /// Common bidegree; nullopt for the zero chain; throws for mixed chains.
  std::optional<Bidegree> bidegree() const {
    std::optional<Bidegree> out;
    for (const auto& [k, c] : terms_) {
      Bidegree b = bidegree_of(k);
      if (out && !(*out == b)) throw ComplexError("chain has mixed bidegree");
      out = b;
    }
    return out;
  }

  /// Splits into homogeneous pieces by bidegree.
  std::map<std::pair<long, long>, Chain> homogeneous_parts() const {
    std::map<std::pair<long, long>, Chain> parts;
    for (const auto& [k, c] : terms_) {
      Bidegree b = bidegree_of(k);
      parts[{b.loops, b.degree}].add_trusted(k, c);
    }
    return parts;
  }

  /// Part of loop number at most `loops`.
  Chain truncated(long loops) const {
    Chain out;
    for (const auto& [k, c] : terms_)
      if (bidegree_of(k).loops <= loops) out.add_trusted(k, c);
    return out;
  }

 private:
  void add_trusted(const CanonicalKey& k, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Lines "coefficient * adjacency-string"; '#' starts a comment.
inline Chain parse_chain(std::string_view text) {
  Chain out;
  std::size_t start = 0, lineno = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto star = line.find('*');
    if (star == std::string::npos) throw ComplexError("line " + std::to_string(lineno) + ": expected 'c * graph'");
    std::string coeff = line.substr(0, star), graph = line.substr(star + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(coeff);
    trim(graph);
    try {
      out.add(parse_adjacency(graph), parse_rational(coeff));
    } catch (const std::exception& err) {
      throw ComplexError("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return out;
}

/// Serializes with the reference orientation of each class, in key order.
inline std::string format_chain(const Chain& c) {
  std::ostringstream os;
  for (const auto& [k, q] : c.terms()) os << q.get_str() << " * " << to_adjacency(reference_graph(k)) << '\n';
  return os.str();
}

}  // namespace gc3
