#pragma once

#include "gc3/exact/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace gc3 {

/// Residues modulo the Mersenne prime 2^61 − 1.
class ModP {
 public:
  static constexpr std::uint64_t p = (std::uint64_t(1) << 61) - 1;

  ModP() = default;
  ModP(long v) : v_(reduce_signed(v)) {}  // NOLINT(google-explicit-constructor)
  ModP(int v) : ModP(long(v)) {}          // NOLINT(google-explicit-constructor)
  explicit ModP(const Integer& z) : v_(mpz_fdiv_ui(z.get_mpz_t(), p)) {}
  explicit ModP(const Rational& q) { *this = ModP(q.get_num()) / ModP(q.get_den()); }

  static ModP raw(std::uint64_t v) {
    ModP r;
    r.v_ = v % p;
    return r;
  }

  std::uint64_t value() const { return v_; }

  ModP& operator+=(ModP o) {
    v_ += o.v_;
    if (v_ >= p) v_ -= p;
    return *this;
  }
  ModP& operator-=(ModP o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_;
    return *this;
  }
  ModP& operator*=(ModP o) {
    unsigned __int128 t = (unsigned __int128)v_ * o.v_;
    std::uint64_t lo = std::uint64_t(t & p), hi = std::uint64_t(t >> 61);
    v_ = lo + hi;
    if (v_ >= p) v_ -= p;
    return *this;
  }
  ModP& operator/=(ModP o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, ModP b) { return a += b; }
  friend ModP operator-(ModP a, ModP b) { return a -= b; }
  friend ModP operator*(ModP a, ModP b) { return a *= b; }
  friend ModP operator/(ModP a, ModP b) { return a /= b; }
  friend ModP operator-(ModP a) { return ModP() - a; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
  friend bool operator!=(ModP a, ModP b) { return a.v_ != b.v_; }

  ModP pow(std::uint64_t e) const {
    ModP r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero modulo p");
    return pow(p - 2);
  }

  std::string get_str() const { return std::to_string(v_); }

 private:
  static std::uint64_t reduce_signed(long v) {
    long r = v % long(p);
    return std::uint64_t(r < 0 ? r + long(p) : r);
  }

  std::uint64_t v_ = 0;
};

inline bool is_zero(ModP a) { return a.value() == 0; }

/// Smallest fraction n/d with |n|, d ≤ √(p/2) congruent to a, if any.
inline std::optional<Rational> rational_reconstruction(ModP a) {
  using i128 = __int128;
  const i128 bound = i128(1) << 30;  // √(2^61 / 2)
  i128 r0 = ModP::p, r1 = a.value(), t0 = 0, t1 = 1;
  while (r1 >= bound) {
    i128 q = r0 / r1;
    i128 r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  i128 t = t1 < 0 ? -t1 : t1;
  if (t >= bound) return std::nullopt;
  long num = long(t1 < 0 ? -r1 : r1), den = long(t);
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  if (ModP(q) != a) return std::nullopt;
  return q;
}

}  // namespace gc3
