#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "hermbound/errors.hpp"

namespace hermbound {

/// Tolerances and budget for adaptive panel integration.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int panel_order = 32;       // Gauss-Legendre nodes per panel
  long max_subdivisions = 1L << 16;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (panel_order < 2)
      throw std::invalid_argument("QuadratureSpec: panel_order must be >= 2");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
  }
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long subdivisions_used = 0;
  bool converged = true;
};

/// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> node;
  std::vector<double> weight;
};

namespace detail {

inline GaussRule compute_gauss_legendre(int order) {
  GaussRule r;
  r.node.resize(order);
  r.weight.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_n, starting from the Chebyshev-like estimate.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing step after convergence
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= order; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    r.node[i] = -x;
    r.node[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weight[i] = w;
    r.weight[order - 1 - i] = w;
  }
  if (order % 2 == 1) r.node[order / 2] = 0.0;
  return r;
}

}  // namespace detail

/// Cached Gauss-Legendre rule of the given order.
inline const GaussRule& gauss_legendre_rule(int order) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, detail::compute_gauss_legendre(order)).first;
  return it->second;
}

/// Single fixed-order panel; exact for polynomials of degree 2*order-1.
template <class F>
double panel_integrate(F&& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre_rule(order);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double v = f(mid + hw * rule.node[i]);
    if (!std::isfinite(v)) throw NonFiniteError("integrand returned a non-finite value");
    sum += rule.weight[i] * v;
  }
  return hw * sum;
}

/// Minimum forced bisection depth so an integrand oscillating at angular
/// frequency freq_hint gets at least panels_per_period panels per period.
inline int min_subdivision_depth(double freq_hint, double a, double b, int panels_per_period = 8) {
  if (!(freq_hint > 0.0) || !(b > a)) return 0;
  const double periods = (b - a) * freq_hint / (2.0 * std::numbers::pi);
  const double panels = periods * panels_per_period;
  int depth = 0;
  while ((1L << depth) < panels && depth < 30) ++depth;
  return depth;
}

namespace detail {

struct Segment {
  double a, b, whole, tol;
  int depth;
};

template <class F>
IntegrationResult adaptive_pass(F& f, double a, double b, const QuadratureSpec& spec,
                                int min_depth, double tol0) {
  IntegrationResult res;
  std::vector<Segment> stack;
  stack.push_back({a, b, panel_integrate(f, a, b, spec.panel_order), tol0, 0});
  bool budget_hit = false;
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    if (budget_hit) {
      res.value += s.whole;
      res.error_estimate += s.tol;
      res.converged = false;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    const double left = panel_integrate(f, s.a, m, spec.panel_order);
    const double right = panel_integrate(f, m, s.b, spec.panel_order);
    ++res.subdivisions_used;
    if (res.subdivisions_used >= spec.max_subdivisions) budget_hit = true;
    const double err = std::abs(s.whole - (left + right));
    if (s.depth >= min_depth && (err <= s.tol || s.depth >= 48)) {
      res.value += left + right;
      res.error_estimate += err;
      if (err > s.tol) res.converged = false;
    } else if (budget_hit) {
      res.value += left + right;
      res.error_estimate += err;
      res.converged = false;
    } else {
      stack.push_back({m, s.b, right, 0.5 * s.tol, s.depth + 1});
      stack.push_back({s.a, m, left, 0.5 * s.tol, s.depth + 1});
    }
  }
  return res;
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration of f over [a, b].
///
/// Bisection with a split-vs-whole error estimate per panel. min_depth forces
/// an initial uniform refinement (see min_subdivision_depth) before the error
/// test applies; callers integrating oscillatory functions must supply it.
template <class F>
IntegrationResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {},
                            int min_depth = 0) {
  spec.validate();
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return {};
  const double root = panel_integrate(f, a, b, spec.panel_order);
  double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(root));
  IntegrationResult res = detail::adaptive_pass(f, a, b, spec, min_depth, tol);
  const double wanted = std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
  if (res.error_estimate > wanted && res.converged) {
    // First pass was driven by a poor whole-interval estimate; redo tighter.
    IntegrationResult second = detail::adaptive_pass(f, a, b, spec, min_depth, wanted);
    second.subdivisions_used += res.subdivisions_used;
    res = second;
  }
  if (res.error_estimate > std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value)))
    res.converged = false;
  return res;
}

/// Integral of f over |t| > T, mapping each ray to [0, 1) via t = T + u/(1-u).
template <class F>
IntegrationResult integrate_tail(F&& f, double T, const QuadratureSpec& spec = {},
                                 int min_depth = 0) {
  if (!(T >= 0.0)) throw std::invalid_argument("integrate_tail: requires T >= 0");
  auto positive = [&f, T](double u) {
    const double g = 1.0 - u;
    return f(T + u / g) / (g * g);
  };
  auto negative = [&f, T](double u) {
    const double g = 1.0 - u;
    return f(-T - u / g) / (g * g);
  };
  IntegrationResult p = integrate(positive, 0.0, 1.0, spec, min_depth);
  IntegrationResult q = integrate(negative, 0.0, 1.0, spec, min_depth);
  return {p.value + q.value, p.error_estimate + q.error_estimate,
          p.subdivisions_used + q.subdivisions_used, p.converged && q.converged};
}

}  // namespace hermbound
