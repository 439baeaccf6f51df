#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hermbound/errors.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/quadrature.hpp"

namespace hermbound {

struct BandLimitParams {
  double N;  // band edge
  double T;  // window half-width

  void validate() const {
    if (!(N > 0.0) || !(T > 0.0))
      throw std::invalid_argument("BandLimitParams: N and T must be > 0");
  }
};

/// Band edge N = (sqrt(2K+1) + sqrt(2K+3)) / 2 for an even truncation order K.
inline double band_edge(int K) {
  if (K < 0 || K % 2 != 0)
    throw OddTruncationError("band_edge: K must be even and >= 0");
  return 0.5 * (std::sqrt(2.0 * K + 1.0) + std::sqrt(2.0 * K + 3.0));
}

/// sin(z)/z with a Taylor patch near zero.
inline double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
  }
  return std::sin(z) / z;
}

/// f^(omega) under the convention f^(w) = (2 pi)^{-1/2} int f(t) e^{-iwt} dt.
/// Uses the analytic transform when present, quadrature otherwise.
inline std::complex<double> fourier_transform(const TestFunction& f, double omega,
                                              const QuadratureSpec& spec = {}) {
  if (f.fourier) return f.fourier(omega);
  const double R = f.support_radius;
  const int depth = min_subdivision_depth(std::abs(omega) + f.oscillation_hint, -R, R);
  auto re = integrate([&](double t) { return f.value(t) * std::cos(omega * t); }, -R, R, spec,
                      depth);
  auto im = integrate([&](double t) { return -f.value(t) * std::sin(omega * t); }, -R, R, spec,
                      depth);
  auto re_tail = integrate_tail([&](double t) { return f.value(t) * std::cos(omega * t); }, R,
                                spec, 5);
  auto im_tail = integrate_tail([&](double t) { return -f.value(t) * std::sin(omega * t); }, R,
                                spec, 5);
  return std::complex<double>(re.value + re_tail.value, im.value + im_tail.value) /
         std::sqrt(2.0 * std::numbers::pi);
}

/// The windowed sinc convolution
///   (F_N f_T)(x) = (1/pi) int_{-T}^{T} sin(N(x-s))/(x-s) f(s) ds.
/// Construction samples f once on a fixed Gauss grid dense enough for the
/// kernel's oscillation; each evaluation is then a weighted sinc sum.
class DirichletOperator {
 public:
  DirichletOperator(const TestFunction& f, BandLimitParams p, const QuadratureSpec& spec = {})
      : p_(p) {
    p_.validate();
    const int depth = min_subdivision_depth(p_.N, -p_.T, p_.T);
    const long panels = 1L << depth;
    const auto& rule = gauss_legendre_rule(spec.panel_order);
    const std::size_t count = panels * spec.panel_order;
    s_.reserve(count);
    wf_.reserve(count);
    cos_ns_.reserve(count);
    sin_ns_.reserve(count);
    for (long pnl = 0; pnl < panels; ++pnl) {
      const double a = -p_.T + 2.0 * p_.T * pnl / panels;
      const double b = -p_.T + 2.0 * p_.T * (pnl + 1) / panels;
      const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (int i = 0; i < spec.panel_order; ++i) {
        const double s = mid + hw * rule.node[i];
        const double v = f.value(s);
        if (!std::isfinite(v)) throw NonFiniteError("DirichletOperator: f not finite");
        s_.push_back(s);
        wf_.push_back(hw * rule.weight[i] * v);
        cos_ns_.push_back(std::cos(p_.N * s));
        sin_ns_.push_back(std::sin(p_.N * s));
      }
    }
  }

  double operator()(double x) const {
    // sin(N(x-s)) expanded against precomputed sin/cos of N s; the Taylor
    // branch handles the removable singularity.
    const double cnx = std::cos(p_.N * x), snx = std::sin(p_.N * x);
    double sum = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      const double z = p_.N * (x - s_[i]);
      double kernel;
      if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        kernel = 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
      } else {
        kernel = (snx * cos_ns_[i] - cnx * sin_ns_[i]) / z;
      }
      sum += wf_[i] * kernel;
    }
    return p_.N / std::numbers::pi * sum;
  }

  const BandLimitParams& params() const { return p_; }

 private:
  BandLimitParams p_;
  std::vector<double> s_, wf_, cos_ns_, sin_ns_;
};

inline double dirichlet_op(const TestFunction& f, const BandLimitParams& p, double x,
                           const QuadratureSpec& spec = {}) {
  return DirichletOperator(f, p, spec)(x);
}

/// Band-limited companion f_N = (f^ chi_(-N,N))^v, evaluated in the Fourier
/// domain: f_N(t) = (2 pi)^{-1/2} int_{-N}^{N} f^(w) e^{iwt} dw. The transform
/// is sampled once on a grid sized for the largest |t| of interest.
class BandLimitedFunction {
 public:
  BandLimitedFunction(const TestFunction& f, double N, const QuadratureSpec& spec = {},
                      double max_abs_t = 0.0)
      : N_(N) {
    if (!(N > 0.0)) throw std::invalid_argument("BandLimitedFunction: N must be > 0");
    const double freq = std::max(max_abs_t, 1.0) + f.fourier_phase_hint;
    const int depth = min_subdivision_depth(freq, -N, N);
    const long panels = 1L << depth;
    const auto& rule = gauss_legendre_rule(spec.panel_order);
    omega_.reserve(panels * spec.panel_order);
    w_.reserve(panels * spec.panel_order);
    re_.reserve(panels * spec.panel_order);
    im_.reserve(panels * spec.panel_order);
    for (long pnl = 0; pnl < panels; ++pnl) {
      const double a = -N + 2.0 * N * pnl / panels;
      const double b = -N + 2.0 * N * (pnl + 1) / panels;
      const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (int i = 0; i < spec.panel_order; ++i) {
        const double w = mid + hw * rule.node[i];
        const auto fh = fourier_transform(f, w, spec);
        omega_.push_back(w);
        w_.push_back(hw * rule.weight[i]);
        re_.push_back(fh.real());
        im_.push_back(fh.imag());
      }
    }
  }

  double operator()(double t) const {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < omega_.size(); ++i) {
      const double c = std::cos(omega_[i] * t), s = std::sin(omega_[i] * t);
      re += w_[i] * (re_[i] * c - im_[i] * s);
      im += w_[i] * (re_[i] * s + im_[i] * c);
    }
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    re *= norm;
    im *= norm;
    if (std::abs(im) > 1e-9 * (1.0 + std::abs(re)))
      throw NonFiniteError("BandLimitedFunction: non-negligible imaginary part");
    return re;
  }

  double band_edge_value() const { return N_; }

 private:
  double N_;
  std::vector<double> omega_, w_, re_, im_;
};

inline double f_N_eval(const TestFunction& f, double N, double t, const QuadratureSpec& spec = {}) {
  return BandLimitedFunction(f, N, spec, std::abs(t))(t);
}

/// sqrt(int_{|t|>T} f^2), analytic when available.
inline double l2_tail_value(const TestFunction& f, double T, const QuadratureSpec& spec = {}) {
  if (f.l2_tail) return std::sqrt(std::max(0.0, f.l2_tail(T)));
  auto f2 = [&](double t) { const double v = f.value(t); return v * v; };
  const int depth = min_subdivision_depth(2.0 * f.oscillation_hint, 0.0, 1.0);
  double v = integrate_tail(f2, T, spec, depth).value;
  return std::sqrt(std::max(0.0, v));
}

/// sqrt(int_{|w|>N} |f^|^2), analytic when available; otherwise via the
/// complement int f^2 - int_{-N}^{N} |f^|^2 (Plancherel). The inner band
/// integral collapses to a double sum over one time grid, since
///   int_{-N}^{N} e^{-i w (t - t')} dw = 2 N sinc(N (t - t')).
inline double fourier_l2_tail_value(const TestFunction& f, double N,
                                    const QuadratureSpec& spec = {}) {
  if (f.fourier_l2_tail) return std::sqrt(std::max(0.0, f.fourier_l2_tail(N)));
  const double R = f.support_radius;
  auto f2 = [&](double t) { const double v = f.value(t); return v * v; };
  const int tdepth = min_subdivision_depth(2.0 * f.oscillation_hint, -R, R);
  const double total =
      integrate(f2, -R, R, spec, tdepth).value + integrate_tail(f2, R, spec).value;

  auto inside_at = [&](int depth) {
    const long panels = 1L << depth;
    const auto& rule = gauss_legendre_rule(spec.panel_order);
    const std::size_t count = panels * spec.panel_order;
    std::vector<double> t(count), wf(count), cn(count), sn(count);
    std::size_t idx = 0;
    for (long pnl = 0; pnl < panels; ++pnl) {
      const double a = -R + 2.0 * R * pnl / panels;
      const double b = -R + 2.0 * R * (pnl + 1) / panels;
      const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (int i = 0; i < spec.panel_order; ++i, ++idx) {
        t[idx] = mid + hw * rule.node[i];
        wf[idx] = hw * rule.weight[i] * f.value(t[idx]);
        cn[idx] = std::cos(N * t[idx]);
        sn[idx] = std::sin(N * t[idx]);
      }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      acc += 0.5 * wf[i] * wf[i];
      for (std::size_t j = 0; j < i; ++j) {
        const double z = N * (t[i] - t[j]);
        double kernel;
        if (std::abs(z) < 1e-4) {
          const double z2 = z * z;
          kernel = 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
        } else {
          kernel = (sn[i] * cn[j] - cn[i] * sn[j]) / z;
        }
        acc += wf[i] * wf[j] * kernel;
      }
    }
    return 2.0 * N / std::numbers::pi * acc;
  };
  int depth = min_subdivision_depth(std::max(N, f.oscillation_hint), -R, R, 4);
  double coarse = inside_at(depth);
  double fine = inside_at(depth + 1);
  if (std::abs(fine - coarse) > std::max(spec.abs_tol, spec.rel_tol * std::abs(fine)) * 10.0)
    fine = inside_at(depth + 2);
  return std::sqrt(std::max(0.0, total - fine));
}

struct Lemma2Residual {
  double lhs;  // L2 norm of f - F_N f_T over [-T, T]
  double rhs;  // sum of the two tail norms
};

/// Both sides of the windowed reconstruction inequality
///   || f - F_N f_T ||_{L2[-T,T]} <= sqrt(int_{|t|>T} f^2) + sqrt(int_{|w|>N} |f^|^2).
inline Lemma2Residual lemma2_residual(const TestFunction& f, const BandLimitParams& p,
                                      const QuadratureSpec& spec = {}) {
  p.validate();
  DirichletOperator op(f, p, spec);
  const int depth = min_subdivision_depth(2.0 * p.N + 2.0 * f.oscillation_hint, -p.T, p.T);
  auto sq = [&](double x) {
    const double d = f.value(x) - op(x);
    return d * d;
  };
  const double lhs = std::sqrt(std::max(0.0, integrate(sq, -p.T, p.T, spec, depth).value));
  const double rhs = l2_tail_value(f, p.T, spec) + fourier_l2_tail_value(f, p.N, spec);
  return {lhs, rhs};
}

}  // namespace hermbound
