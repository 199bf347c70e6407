#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gc3 {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "a", "-a/b" or "+a/b"; surrounding blanks are ignored.
inline Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  std::string s(text.substr(b, e - b));
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto digits = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = (allow_sign && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(s, true)) throw std::invalid_argument("bad rational literal: " + s);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false))
    throw std::invalid_argument("bad rational literal: " + s);
  return make_rational(Integer(num), Integer(den));
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Bit size of numerator plus denominator; the pivot height in elimination.
inline std::size_t height(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Rational pow(const Rational& q, unsigned e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  return Rational(n, d);
}

inline Integer pow(const Integer& z, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
  return r;
}

/// Exact square root of a non-negative rational, or false if it is irrational.
inline bool exact_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(n, d);
  return true;
}

}  // namespace gc3

template <>
struct std::hash<gc3::Rational> {
  std::size_t operator()(const gc3::Rational& q) const noexcept {
    return std::hash<std::string>{}(q.get_str());
  }
};
