#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hermbound/errors.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/hermite.hpp"
#include "hermbound/quadrature.hpp"

namespace hermbound {

struct SeriesApprox {
  std::vector<double> coeffs;  // c_0 .. c_K
  int K = 0;
};

namespace detail {

// One pass of the coefficient integrals on a fixed panelization: the core
// [-R, R] plus both transformed tails. All K+1 integrals share every node,
// so each node costs one eval_all sweep.
inline std::vector<double> coefficient_pass(const TestFunction& f, int K, double R,
                                            int core_depth, int tail_depth, int order) {
  const auto& rule = gauss_legendre_rule(order);
  std::vector<double> c(static_cast<std::size_t>(K) + 1, 0.0);
  std::vector<double> h(static_cast<std::size_t>(K) + 1);
  auto accumulate = [&](double t, double w) {
    const double v = f.value(t);
    if (!std::isfinite(v)) throw NonFiniteError("coefficients: f not finite");
    if (v == 0.0) return;
    hermite::eval_all(K, t, h);
    const double wv = w * v;
    for (int k = 0; k <= K; ++k) c[k] += wv * h[k];
  };
  const long core_panels = 1L << core_depth;
  for (long p = 0; p < core_panels; ++p) {
    const double a = -R + 2.0 * R * p / core_panels;
    const double b = -R + 2.0 * R * (p + 1) / core_panels;
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) accumulate(mid + hw * rule.node[i], hw * rule.weight[i]);
  }
  const long tail_panels = 1L << tail_depth;
  for (int ray = 0; ray < 2; ++ray) {
    const double sign = ray == 0 ? 1.0 : -1.0;
    for (long p = 0; p < tail_panels; ++p) {
      const double a = static_cast<double>(p) / tail_panels;
      const double b = static_cast<double>(p + 1) / tail_panels;
      const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (int i = 0; i < order; ++i) {
        const double u = mid + hw * rule.node[i];
        const double g = 1.0 - u;
        accumulate(sign * (R + u / g), hw * rule.weight[i] / (g * g));
      }
    }
  }
  return c;
}

}  // namespace detail

/// Fourier-Hermite coefficients c_k = int f h_k over the real line,
/// k = 0 .. K, with the oscillation of h_K driving the panel density.
inline SeriesApprox coefficients(const TestFunction& f, int K, const QuadratureSpec& spec = {}) {
  if (K < 0) throw std::invalid_argument("coefficients: K must be >= 0");
  spec.validate();
  const double R = f.support_radius;
  const double freq = std::max(std::sqrt(2.0 * K + 3.0), f.oscillation_hint);
  int depth = min_subdivision_depth(freq, -R, R);
  int tail_depth = std::max(5, depth - 3);
  std::vector<double> prev = detail::coefficient_pass(f, K, R, depth, tail_depth, spec.panel_order);
  for (int round = 0;; ++round) {
    std::vector<double> next =
        detail::coefficient_pass(f, K, R, depth + 1, tail_depth + 1, spec.panel_order);
    double scale = 0.0, diff = 0.0;
    for (int k = 0; k <= K; ++k) {
      scale = std::max(scale, std::abs(next[k]));
      diff = std::max(diff, std::abs(next[k] - prev[k]));
    }
    if (diff <= std::max(spec.abs_tol, spec.rel_tol * scale))
      return {std::move(next), K};
    if (round >= 4 || (1L << (depth + 2)) > spec.max_subdivisions)
      throw NonConvergenceError("coefficients: refinement budget exhausted");
    prev = std::move(next);
    ++depth;
    ++tail_depth;
  }
}

/// (S_K f)(t) = sum c_k h_k(t).
inline double partial_sum(const SeriesApprox& s, double t) {
  if (s.coeffs.empty()) return 0.0;
  thread_local std::vector<double> h;
  h.resize(s.coeffs.size());
  hermite::eval_all(s.K, t, h);
  double v = 0.0;
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) v += s.coeffs[k] * h[k];
  return v;
}

struct ErrorReport {
  double rms = 0.0;  // [(1/2T) int_{-T}^{T} (f - S_K f)^2]^{1/2}
  double sup = 0.0;  // max over the uniform grid (a lower bound on the true sup)
  int grid_points = 0;
  double T = 0.0;
};

/// Measured approximation error of a partial sum on [-T, T].
inline ErrorReport measure_error(const TestFunction& f, const SeriesApprox& s, double T,
                                 int grid_points, const QuadratureSpec& spec = {}) {
  if (!(T > 0.0)) throw std::invalid_argument("measure_error: T must be > 0");
  if (grid_points < 2) throw std::invalid_argument("measure_error: grid_points must be >= 2");
  const double freq = 2.0 * std::max(std::sqrt(2.0 * s.K + 3.0), f.oscillation_hint);
  const int depth = min_subdivision_depth(freq, -T, T);
  auto sq = [&](double t) {
    const double d = f.value(t) - partial_sum(s, t);
    return d * d;
  };
  auto integral = integrate(sq, -T, T, spec, depth);
  ErrorReport report;
  report.rms = std::sqrt(std::max(0.0, integral.value / (2.0 * T)));
  report.grid_points = grid_points;
  report.T = T;
  for (int i = 0; i < grid_points; ++i) {
    const double t = -T + 2.0 * T * i / (grid_points - 1);
    report.sup = std::max(report.sup, std::abs(f.value(t) - partial_sum(s, t)));
  }
  return report;
}

}  // namespace hermbound
