#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hermbound/faddeeva.hpp"

namespace hermbound {

inline double normal_density(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

struct MixtureComponent {
  double weight;
  double scale;   // must be > 0
  double center;
};

/// Finite Gaussian mixture f(t) = sum_i w_i phi(a_i (t - c_i)) with
/// phi the standard normal density. Everything needed downstream has a
/// closed form: derivative, Fourier transform (convention
/// f^(w) = (2 pi)^{-1/2} int f(t) e^{-i w t} dt), and both L^2 tails.
class GaussianMixture {
 public:
  explicit GaussianMixture(std::vector<MixtureComponent> components)
      : comps_(std::move(components)) {
    if (comps_.empty()) throw std::invalid_argument("GaussianMixture: needs >= 1 component");
    for (const auto& c : comps_)
      if (!(c.scale > 0.0)) throw std::invalid_argument("GaussianMixture: scales must be > 0");
  }

  const std::vector<MixtureComponent>& components() const { return comps_; }

  double value(double t) const {
    double v = 0.0;
    for (const auto& c : comps_) v += c.weight * normal_density(c.scale * (t - c.center));
    return v;
  }

  double derivative(double t) const {
    double v = 0.0;
    for (const auto& c : comps_) {
      const double u = c.scale * (t - c.center);
      v -= c.weight * c.scale * u * normal_density(u);
    }
    return v;
  }

  std::complex<double> fourier(double omega) const {
    std::complex<double> v = 0.0;
    for (const auto& c : comps_) {
      const double mag = c.weight / c.scale * std::exp(-0.5 * omega * omega / (c.scale * c.scale));
      v += mag * std::exp(std::complex<double>(0.0, -omega * c.center));
    }
    return v / std::sqrt(2.0 * std::numbers::pi);
  }

  /// int f = sum w_i / a_i.
  double mass() const {
    double m = 0.0;
    for (const auto& c : comps_) m += c.weight / c.scale;
    return m;
  }

  /// int_{|t|>T} f(t)^2 dt. Pairwise products of Gaussians are Gaussians, so
  /// each term reduces to erfc.
  double l2_tail(double T) const {
    double total = 0.0;
    for (const auto& ci : comps_)
      for (const auto& cj : comps_) {
        const double s2 = ci.scale * ci.scale + cj.scale * cj.scale;
        const double s = std::sqrt(s2);
        const double m = (ci.scale * ci.scale * ci.center + cj.scale * cj.scale * cj.center) / s2;
        const double dc = ci.center - cj.center;
        const double q = ci.scale * ci.scale * cj.scale * cj.scale * dc * dc / s2;
        const double rays = std::erfc(s * (T - m) / std::numbers::sqrt2) +
                            std::erfc(s * (T + m) / std::numbers::sqrt2);
        total += ci.weight * cj.weight * std::exp(-0.5 * q) /
                 (2.0 * std::sqrt(2.0 * std::numbers::pi) * s) * rays;
      }
    return total;
  }

  /// int f^2 over the whole line (the T = 0 tail).
  double l2_norm_squared() const { return l2_tail(0.0); }

  /// int_{|w|>N} |f^(w)|^2 dw. The cross terms carry a cosine, handled by the
  /// shifted-erfc form behind gaussian_cosine_tail.
  double fourier_l2_tail(double N) const {
    double total = 0.0;
    for (const auto& ci : comps_)
      for (const auto& cj : comps_) {
        const double ai2 = ci.scale * ci.scale, aj2 = cj.scale * cj.scale;
        const double beta = (ai2 + aj2) / (2.0 * ai2 * aj2);
        const double delta = ci.center - cj.center;
        total += ci.weight * cj.weight / (ci.scale * cj.scale) *
                 gaussian_cosine_tail(beta, delta, N);
      }
    return total / std::numbers::pi;
  }

  /// Half-width beyond which the mixture is numerically dead (12 standard
  /// deviations past the farthest center).
  double support_radius() const {
    double cmax = 0.0, amin = comps_.front().scale;
    for (const auto& c : comps_) {
      cmax = std::max(cmax, std::abs(c.center));
      amin = std::min(amin, c.scale);
    }
    return cmax + 12.0 / amin;
  }

  double max_abs_center() const {
    double cmax = 0.0;
    for (const auto& c : comps_) cmax = std::max(cmax, std::abs(c.center));
    return cmax;
  }

 private:
  std::vector<MixtureComponent> comps_;
};

/// The trimodal density 0.5 phi(t) + 3 phi(10(t-0.8)) + 2 phi(10(t-1.2)).
inline GaussianMixture trimodal() {
  return GaussianMixture({{0.5, 1.0, 0.0}, {3.0, 10.0, 0.8}, {2.0, 10.0, 1.2}});
}

/// Standard normal density as a one-component mixture.
inline GaussianMixture standard_normal() { return GaussianMixture({{1.0, 1.0, 0.0}}); }

inline std::complex<double> mixture_fourier(const GaussianMixture& m, double omega) {
  return m.fourier(omega);
}

struct TailPair {
  double l2_tail;
  double fourier_l2_tail;
};

inline TailPair mixture_tails(const GaussianMixture& m, double T, double N) {
  if (!(T >= 0.0) || !(N >= 0.0))
    throw std::invalid_argument("mixture_tails: T and N must be >= 0");
  return {m.l2_tail(T), m.fourier_l2_tail(N)};
}

/// A function under study. Analytic fields are optional; absent ones fall
/// back to quadrature in the modules that need them.
struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;                 // optional
  std::function<std::complex<double>(double)> fourier;      // optional
  std::function<double(double)> l2_tail;                    // optional, T -> int_{|t|>T} f^2
  std::function<double(double)> fourier_l2_tail;            // optional, N -> int_{|w|>N} |f^|^2
  double support_radius = 40.0;   // quadrature core half-width
  double oscillation_hint = 0.0;  // angular frequency of the fastest feature
  double fourier_phase_hint = 0.0;  // extra phase frequency of f^ (max |center|)
};

inline TestFunction to_test_function(const GaussianMixture& m) {
  TestFunction f;
  f.value = [m](double t) { return m.value(t); };
  f.derivative = [m](double t) { return m.derivative(t); };
  f.fourier = [m](double w) { return m.fourier(w); };
  f.l2_tail = [m](double T) { return m.l2_tail(T); };
  f.fourier_l2_tail = [m](double N) { return m.fourier_l2_tail(N); };
  f.support_radius = m.support_radius();
  f.fourier_phase_hint = m.max_abs_center();
  return f;
}

inline TestFunction black_box(std::function<double(double)> value, double support_radius,
                              double oscillation_hint = 0.0) {
  TestFunction f;
  f.value = std::move(value);
  f.support_radius = support_radius;
  f.oscillation_hint = oscillation_hint;
  return f;
}

}  // namespace hermbound
