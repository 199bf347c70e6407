#pragma once

#include "gc3/exact/exterior.hpp"
#include "gc3/forms/laplacian.hpp"

#include <sstream>
#include <string>

namespace gc3 {

using PolyForm = ExteriorElement<Polynomial>;

/// d of a form with polynomial coefficients in x_1..x_n (generators dx_i).
inline PolyForm exterior_derivative(const PolyForm& f, std::size_t nvars) {
  PolyForm r;
  for (const auto& [s, c] : f.terms())
    for (std::size_t i = 0; i < nvars; ++i) {
      GeneratorSet bit = GeneratorSet(1) << i;
      if (s & bit) continue;
      Polynomial d = c.derivative(i);
      if (d.zero()) continue;
      if (wedge_sign(bit, s) < 0) d = -d;
      r.add(s | bit, d);
    }
  return r;
}

inline PolyForm differential(const Polynomial& p, std::size_t nvars) {
  return exterior_derivative(PolyForm::scalar(p), nvars);
}

/// numerator / base^{s/2}.
struct ProjectiveForm {
  PolyForm numerator;
  unsigned s = 0;
  Polynomial base;
  std::size_t variables = 0;

  bool zero() const { return numerator.zero(); }

  /// Divides out base while every coefficient is divisible and s ≥ 2.
  ProjectiveForm& reduce() {
    while (s >= 2 && !numerator.zero()) {
      PolyForm next;
      bool ok = true;
      for (const auto& [set, c] : numerator.terms()) {
        Polynomial q;
        if (!c.divide_exact(base, q)) {
          ok = false;
          break;
        }
        next.add(set, q);
      }
      if (!ok) break;
      numerator = std::move(next);
      s -= 2;
    }
    return *this;
  }

  /// 2Ψ·dN = s·dΨ ∧ N, i.e. d(N/Ψ^{s/2}) = 0.
  bool closed() const {
    PolyForm lhs = exterior_derivative(numerator, variables).scaled(base * Rational(2));
    PolyForm rhs = (differential(base, variables) * numerator).scaled(Polynomial(variables, Rational(s)));
    return lhs == rhs;
  }

  /// "Q-polynomial; s; Psi-polynomial" with one monomial list per form component.
  std::string dump() const {
    std::ostringstream os;
    os << numerator.to_string() << "; " << s << "; " << base.to_string();
    return os.str();
  }

  friend bool operator==(const ProjectiveForm& a, const ProjectiveForm& b) {
    if (a.zero() || b.zero()) return a.zero() && b.zero();
    return a.s == b.s && a.numerator == b.numerator && a.base == b.base;
  }
  friend bool operator!=(const ProjectiveForm& a, const ProjectiveForm& b) { return !(a == b); }
};

/// Product of two forms over the same base, reduced.
inline ProjectiveForm wedge(const ProjectiveForm& a, const ProjectiveForm& b) {
  if (a.base != b.base) throw FormError("wedge of forms with different Symanzik bases");
  ProjectiveForm r{a.numerator * b.numerator, a.s + b.s, a.base, std::max(a.variables, b.variables)};
  return r.reduce();
}

}  // namespace gc3
