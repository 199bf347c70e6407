#pragma once

#include "gc3/exact/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gc3 {

constexpr std::size_t kMaxVariables = 24;

struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exp{};
  std::uint16_t degree = 0;

  std::uint8_t operator[](std::size_t i) const { return exp[i]; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned s = unsigned(a.exp[i]) + b.exp[i];
      if (s > 255) throw std::overflow_error("monomial exponent overflow");
      r.exp[i] = static_cast<std::uint8_t>(s);
    }
    r.degree = a.degree + b.degree;
    return r;
  }

  bool divides(const Monomial& b) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exp[i] > b.exp[i]) return false;
    return true;
  }

  // b / this, assuming divides(b)
  Monomial cofactor(const Monomial& b) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = b.exp[i] - exp[i];
    r.degree = b.degree - degree;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree == b.degree && a.exp == b.exp;
  }
};

/// Graded lexicographic order, largest first, so the leading term is begin().
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.exp > b.exp;
  }
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) { check_vars(nvars); }
  Polynomial(std::size_t nvars, const Rational& c) : nvars_(nvars) {
    check_vars(nvars);
    if (!is_zero(c)) terms_.emplace(Monomial{}, c);
  }

  static Polynomial variable(std::size_t nvars, std::size_t i, const Rational& c = 1) {
    Polynomial p(nvars);
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    Monomial m;
    m.exp[i] = 1;
    m.degree = 1;
    if (!is_zero(c)) p.terms_.emplace(m, c);
    return p;
  }

  static Polynomial monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
    Polynomial p(nvars);
    if (!is_zero(c)) p.terms_.emplace(m, c);
    return p;
  }

  std::size_t variables() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree; }

  bool homogeneous() const {
    if (terms_.empty()) return true;
    auto d = terms_.begin()->first.degree;
    for (const auto& t : terms_)
      if (t.first.degree != d) return false;
    return true;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    unify(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    unify(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& c) {
    if (is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(std::max(a.nvars_, b.nvars_));
    if (a.terms_.empty() || b.terms_.empty()) return r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned e) const {
    Polynomial r(nvars_, 1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  /// Exact division; returns false (leaving q unspecified) if d does not divide *this.
  bool divide_exact(const Polynomial& d, Polynomial& q) const {
    if (d.zero()) throw std::domain_error("division by zero polynomial");
    q = Polynomial(std::max(nvars_, d.nvars_));
    Polynomial r = *this;
    const auto& [lm, lc] = *d.terms_.begin();
    while (!r.zero()) {
      const auto& [rm, rc] = *r.terms_.begin();
      if (!lm.divides(rm)) return false;
      Monomial t = lm.cofactor(rm);
      Rational c = rc / lc;
      q.add_term(t, c);
      for (const auto& [dm, dc] : d.terms_) r.add_term(t * dm, -c * dc);
    }
    return true;
  }

  /// Largest t with d^t dividing *this (bounded by limit), the quotient in q.
  unsigned divide_power(const Polynomial& d, unsigned limit, Polynomial& q) const {
    q = *this;
    unsigned t = 0;
    if (zero()) return 0;
    Polynomial next;
    while (t < limit && q.divide_exact(d, next)) {
      q = std::move(next);
      ++t;
    }
    return t;
  }

  template <class R>
  R evaluate(const std::vector<R>& x) const {
    R acc(0);
    for (const auto& [m, c] : terms_) {
      R term(1);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < m.exp[i]; ++k) term *= x[i];
      acc += term * coerce<R>(c);
    }
    return acc;
  }

  Rational evaluate(const std::vector<Rational>& x) const { return evaluate<Rational>(x); }

  double evaluate_double(const double* x) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
      double t = c.get_d();
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < m.exp[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  /// Substitutes x_i = value; the variable count is unchanged.
  Polynomial substitute(std::size_t i, const Rational& value) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      Rational cc = c * gc3::pow(value, m.exp[i]);
      mm.degree -= mm.exp[i];
      mm.exp[i] = 0;
      r.add_term(mm, cc);
    }
    return r;
  }

  /// Substitutes every variable by a polynomial (all in the same target ring).
  Polynomial compose(const std::vector<Polynomial>& images, std::size_t target_vars) const {
    Polynomial r(target_vars);
    for (const auto& [m, c] : terms_) {
      Polynomial t(target_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.exp[i]) t *= images.at(i).pow(m.exp[i]);
      r += t;
    }
    return r;
  }

  /// Reindexes variables: variable i goes to map[i] in a ring with target_vars variables.
  Polynomial rename(const std::vector<std::size_t>& map, std::size_t target_vars) const {
    Polynomial r(target_vars);
    for (const auto& [m, c] : terms_) {
      Monomial mm;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.exp[i]) {
          if (map.at(i) >= target_vars) throw std::out_of_range("rename target out of range");
          mm.exp[map[i]] = m.exp[i];
        }
      mm.degree = m.degree;
      r.add_term(mm, c);
    }
    return r;
  }

  Polynomial derivative(std::size_t i) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (!m.exp[i]) continue;
      Monomial mm = m;
      --mm.exp[i];
      --mm.degree;
      r.add_term(mm, c * m.exp[i]);
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = abs(c);
      os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      bool unit = (a == 1) && m.degree > 0;
      if (!unit) os << a.get_str();
      bool lead = unit;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (!m.exp[i]) continue;
        if (!lead) os << '*';
        lead = false;
        os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (m.exp[i] > 1) os << '^' << unsigned(m.exp[i]);
      }
      first = false;
    }
    return os.str();
  }

 private:
  template <class R>
  static R coerce(const Rational& c) {
    if constexpr (std::is_same_v<R, Integer>) {
      if (c.get_den() != 1) throw std::domain_error("non-integral coefficient in integer evaluation");
      return c.get_num();
    } else {
      return R(c);
    }
  }

  static void check_vars(std::size_t n) {
    if (n > kMaxVariables) throw std::length_error("too many polynomial variables");
  }

  void unify(const Polynomial& o) { nvars_ = std::max(nvars_, o.nvars_); }

  std::size_t nvars_ = 0;
  Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.zero(); }

}  // namespace gc3
