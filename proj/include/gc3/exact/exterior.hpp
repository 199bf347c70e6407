#pragma once

#include "gc3/exact/ring.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gc3 {

using GeneratorSet = std::uint32_t;

/// Sign of dx_A ∧ dx_B relative to dx_{A∪B} with increasing indices; 0 if A ∩ B ≠ ∅.
inline int wedge_sign(GeneratorSet a, GeneratorSet b) {
  if (a & b) return 0;
  unsigned inversions = 0;
  while (b) {
    unsigned j = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Element of the exterior algebra on at most 32 generators with coefficients in R.
template <class R>
class ExteriorElement {
 public:
  using Terms = std::map<GeneratorSet, R>;
  using scalar_type = R;

  ExteriorElement() = default;

  static ExteriorElement scalar(const R& c) {
    ExteriorElement e;
    e.add(0, c);
    return e;
  }

  static ExteriorElement generator(unsigned i, const R& c = Ring<R>::one()) {
    if (i >= 32) throw std::out_of_range("exterior generator index out of range");
    ExteriorElement e;
    e.add(GeneratorSet(1) << i, c);
    return e;
  }

  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  R coefficient(GeneratorSet s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Ring<R>::zero() : it->second;
  }

  /// Degree if homogeneous, -1 for zero, throws if mixed.
  int degree() const {
    if (terms_.empty()) return -1;
    int d = std::popcount(terms_.begin()->first);
    for (const auto& t : terms_)
      if (std::popcount(t.first) != d) throw std::logic_error("inhomogeneous exterior element");
    return d;
  }

  void add(GeneratorSet s, const R& c) {
    if (is_zero(c)) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
      terms_.emplace(s, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  ExteriorElement& operator+=(const ExteriorElement& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  ExteriorElement& operator-=(const ExteriorElement& o) {
    for (const auto& [s, c] : o.terms_) add(s, R(-c));
    return *this;
  }
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
  friend ExteriorElement operator-(const ExteriorElement& a) {
    ExteriorElement r;
    for (const auto& [s, c] : a.terms_) r.terms_.emplace(s, R(-c));
    return r;
  }

  /// Multiplies every coefficient by a ring element.
  ExteriorElement scaled(const R& f) const {
    ExteriorElement r;
    if (is_zero(f)) return r;
    for (const auto& [s, c] : terms_) r.add(s, R(c * f));
    return r;
  }

  friend ExteriorElement operator*(const ExteriorElement& a, const ExteriorElement& b) {
    ExteriorElement r;
    for (const auto& [sa, ca] : a.terms_)
      for (const auto& [sb, cb] : b.terms_) {
        int sg = wedge_sign(sa, sb);
        if (!sg) continue;
        R prod = ca * cb;
        if (sg < 0) prod = -prod;
        r.add(sa | sb, prod);
      }
    return r;
  }

  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }
  friend bool operator!=(const ExteriorElement& a, const ExteriorElement& b) { return !(a == b); }

  /// Applies f to every coefficient (a ring homomorphism such as evaluation or substitution).
  template <class S, class F>
  ExteriorElement<S> map(F&& f) const {
    ExteriorElement<S> r;
    for (const auto& [s, c] : terms_) r.add(s, f(c));
    return r;
  }

  /// Sets dx_i = 0.
  ExteriorElement drop_generator(unsigned i) const {
    ExteriorElement r;
    GeneratorSet bit = GeneratorSet(1) << i;
    for (const auto& [s, c] : terms_)
      if (!(s & bit)) r.terms_.emplace(s, c);
    return r;
  }

  /// Contraction with the vector field Σ v_i ∂/∂(dx_i).
  ExteriorElement contract(const std::vector<R>& v) const {
    ExteriorElement r;
    for (const auto& [s, c] : terms_) {
      GeneratorSet rest = s;
      int pos = 0;
      while (rest) {
        unsigned i = std::countr_zero(rest);
        rest &= rest - 1;
        if (i < v.size() && !is_zero(v[i])) {
          R term = c * v[i];
          if (pos & 1) term = -term;
          r.add(s & ~(GeneratorSet(1) << i), term);
        }
        ++pos;
      }
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& gens = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << '(' << coefficient_string(c) << ')';
      GeneratorSet rest = s;
      while (rest) {
        unsigned i = std::countr_zero(rest);
        rest &= rest - 1;
        os << "*d" << (i < gens.size() ? gens[i] : "x" + std::to_string(i + 1));
      }
    }
    return os.str();
  }

 private:
  static std::string coefficient_string(const R& c) {
    if constexpr (std::is_same_v<R, Polynomial>)
      return c.to_string();
    else
      return c.get_str();
  }

  Terms terms_;
};

template <class R>
bool is_zero(const ExteriorElement<R>& e) {
  return e.zero();
}

/// Ω_m = Σ_e (-1)^{e-1} x_e dx_1 ∧ … (omit dx_e) … ∧ dx_m over Q[x_1..x_m].
inline ExteriorElement<Polynomial> simplex_form(std::size_t m) {
  ExteriorElement<Polynomial> w;
  GeneratorSet all = m >= 32 ? ~GeneratorSet(0) : ((GeneratorSet(1) << m) - 1);
  for (std::size_t e = 0; e < m; ++e)
    w.add(all & ~(GeneratorSet(1) << e),
          Polynomial::variable(m, e, (e % 2) ? Rational(-1) : Rational(1)));
  return w;
}

}  // namespace gc3

namespace gc3 {

template <class R>
struct Ring<ExteriorElement<R>> {
  static ExteriorElement<R> zero() { return ExteriorElement<R>(); }
  static ExteriorElement<R> one() { return ExteriorElement<R>::scalar(Ring<R>::one()); }
};

}  // namespace gc3
