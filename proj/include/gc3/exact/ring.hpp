#pragma once

#include "gc3/exact/polynomial.hpp"

namespace gc3 {

/// Additive and multiplicative identities for the coefficient rings used generically.
template <class R>
struct Ring {
  static R zero() { return R(0); }
  static R one() { return R(1); }
};

template <>
struct Ring<Polynomial> {
  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial(0, Rational(1)); }
};

}  // namespace gc3
