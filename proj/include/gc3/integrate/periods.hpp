#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace gc3 {

namespace periods {

inline long double zeta3() {
  // Apéry: ζ(3) = 5/2 Σ (−1)^{n+1} / (n³ C(2n,n))
  long double s = 0, c = 2;  // C(2,1)
  for (int n = 1; n < 40; ++n) {
    s += ((n % 2) ? 1.0L : -1.0L) / ((long double)n * n * n * c);
    c = c * (2.0L * n + 1) * (2.0L * n + 2) / ((long double)(n + 1) * (n + 1));
  }
  return 2.5L * s;
}

inline long double ln2() { return std::log(2.0L); }

inline long double li4_half() {
  long double s = 0, p = 1;
  for (int k = 1; k < 80; ++k) {
    p /= 2;
    long double k4 = (long double)k * k * k * k;
    s += p / k4;
  }
  return s;
}

inline long double catalan() {
  // G = π/8·ln(2+√3) + 3/8 Σ 1/((2n+1)² C(2n,n))
  long double s = 0, c = 1;
  for (int n = 0; n < 60; ++n) {
    s += 1.0L / ((2.0L * n + 1) * (2.0L * n + 1) * c);
    c = c * (2.0L * n + 1) * (2.0L * n + 2) / ((long double)(n + 1) * (n + 1));
  }
  return std::numbers::pi_v<long double> / 8 * std::log(2.0L + std::sqrt(3.0L)) + 3.0L / 8 * s;
}

/// Im Li₄(i) = Σ (−1)^j/(2j+1)⁴, summed with an averaged tail.
inline long double im_li4_i() {
  long double s = 0, prev = 0;
  const int n = 200000;
  for (int j = 0; j < n; ++j) {
    prev = s;
    long double d = 2.0L * j + 1;
    s += ((j % 2) ? -1.0L : 1.0L) / (d * d * d * d);
  }
  return 0.5L * (s + prev);
}

}  // namespace periods

/// Elements b₁…b₇ with τ₁ = 10·Σ λᵢ bᵢ.
inline std::array<long double, 7> period_basis() {
  const long double pi = std::numbers::pi_v<long double>, pi2 = pi * pi, z3 = periods::zeta3(),
                    l2 = periods::ln2();
  return {1.0L / 3,
          pi2 / 9,
          z3,
          (2 * pi2 * l2 - 21 * z3) / 6,
          pi2 * pi2 / 180,
          (l2 * l2 * l2 * l2 + 24 * periods::li4_half()) / 3,
          (pi2 * periods::catalan() + 24 * periods::im_li4_i()) / 9};
}

inline long double tau1_from_lambda(const std::array<long, 7>& lambda) {
  auto b = period_basis();
  long double s = 0;
  for (std::size_t i = 0; i < 7; ++i) s += (long double)lambda[i] * b[i];
  return 10 * s;
}

/// 40(13ζ(3) − 2π² ln 2).
inline long double tau1_of_x_closed_form() {
  const long double pi = std::numbers::pi_v<long double>;
  return 40 * (13 * periods::zeta3() - 2 * pi * pi * periods::ln2());
}

}  // namespace gc3
