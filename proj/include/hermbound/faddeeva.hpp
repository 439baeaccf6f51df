#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace hermbound {

namespace detail {

// Rational approximation of w(z) = e^{-z^2} erfc(-iz) on the upper half
// plane, following Weideman's construction: expand e^{-t^2} against the
// rational basis generated by the Moebius map (L+iz)/(L-iz). The expansion
// coefficients are cosine sums over a tangent grid, computed once.
struct FaddeevaTable {
  static constexpr int kTerms = 40;
  double L;
  std::array<double, kTerms> a;

  FaddeevaTable() {
    constexpr int N = kTerms;
    constexpr int M = 2 * N;
    L = std::sqrt(N / std::numbers::sqrt2);
    std::array<double, M> g{};  // g_k = e^{-t^2} (L^2 + t^2), t = L tan(k pi / 2M)
    for (int k = 0; k < M; ++k) {
      const double theta = k * std::numbers::pi / (2.0 * M);
      const double t = L * std::tan(theta);
      g[k] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int m = 1; m <= N; ++m) {
      double s = g[0];
      for (int k = 1; k < M; ++k) s += 2.0 * g[k] * std::cos(std::numbers::pi * k * m / M);
      a[m - 1] = s / (2.0 * M);
    }
  }
};

inline const FaddeevaTable& faddeeva_table() {
  static const FaddeevaTable table;
  return table;
}

}  // namespace detail

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz), valid for Im(z) >= 0.
inline std::complex<double> faddeeva(std::complex<double> z) {
  const auto& tbl = detail::faddeeva_table();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> d = tbl.L - iz;
  const std::complex<double> Z = (tbl.L + iz) / d;
  std::complex<double> p = 0.0;
  for (int m = detail::FaddeevaTable::kTerms; m-- > 0;) p = p * Z + tbl.a[m];
  return 2.0 * p / (d * d) + (1.0 / std::sqrt(std::numbers::pi)) / d;
}

/// Well-conditioned Re[e^{-y^2} erfc(x - i y)] for x >= 0, via
/// e^{-x^2} Re[e^{2ixy} w(y + ix)]; every factor stays O(1). Even in y.
inline double erfc_shifted_real(double x, double y) {
  const double ay = std::abs(y);
  const std::complex<double> w = faddeeva({ay, x});
  const double c = std::cos(2.0 * x * ay), s = std::sin(2.0 * x * ay);
  return std::exp(-x * x) * (c * w.real() - s * w.imag());
}

/// Closed form of the half-line Gaussian cosine integral
///   I(beta, delta, N) = int_N^inf e^{-beta w^2} cos(delta w) dw,  beta > 0.
inline double gaussian_cosine_tail(double beta, double delta, double N) {
  const double rb = std::sqrt(beta);
  const double x = rb * N;
  const double y = std::abs(delta) / (2.0 * rb);
  return 0.5 * std::sqrt(std::numbers::pi) / rb * erfc_shifted_real(x, y);
}

}  // namespace hermbound
