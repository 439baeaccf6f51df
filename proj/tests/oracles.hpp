#pragma once

// Test-only reference implementations, independent of the library's
// integration and recurrence paths.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracles {

// Composite Simpson on a fixed grid. Deliberately dumb: no adaptivity, no
// Gauss nodes, so it shares nothing with the library quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20001) {
  if (n % 2 == 0) ++n;
  const double h = (b - a) / (n - 1);
  double sum = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Simpson over |t| > T using the substitution t = +-(T + tan(v)), v in [0, pi/2).
inline double simpson_tail(const std::function<double(double)>& f, double T, int n = 20001) {
  auto ray = [&](double sign) {
    auto g = [&](double v) {
      const double c = std::cos(v);
      if (c < 1e-12) return 0.0;
      const double t = sign * (T + std::tan(v));
      return f(t) / (c * c);
    };
    return simpson(g, 0.0, std::numbers::pi / 2.0 - 1e-9, n);
  };
  return ray(1.0) + ray(-1.0);
}

// Hermite function via the derivative ladder of exp(-t^2): repeatedly apply
// p <- p' - 2 t p to the polynomial factor, then attach the weight. Exercises
// none of the three-term recurrence code.
inline double hermite_rodrigues(int k, double t) {
  std::vector<double> p{1.0};  // coefficients of the polynomial factor of d^k/dt^k e^{-t^2}
  for (int step = 0; step < k; ++step) {
    // q = p' - 2 t p
    std::vector<double> q(p.size() + 1, 0.0);
    for (std::size_t j = 1; j < p.size(); ++j) q[j - 1] += j * p[j];
    for (std::size_t j = 0; j < p.size(); ++j) q[j + 1] -= 2.0 * p[j];
    p = std::move(q);
  }
  double poly = 0.0;
  for (std::size_t j = p.size(); j-- > 0;) poly = poly * t + p[j];
  double log_gamma_k = -0.25 * std::log(std::numbers::pi) - 0.5 * k * std::numbers::ln2 -
                       0.5 * std::lgamma(k + 1.0);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_gamma_k) * poly * std::exp(-0.5 * t * t);
}

inline double phi(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

}  // namespace oracles
