#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "hermbound/errors.hpp"

namespace hermbound::hermite {

// Orthonormal Hermite functions:
//
//   h_k(t) = pi^{-1/4} 2^{-k/2} (k!)^{-1/2} H_k(t) e^{-t^2/2},
//
// with H_k the physicists' Hermite polynomial, so that <h_j, h_k> = delta_jk
// over the real line. Note the pi^{-1/4}: this is the unique constant making
// the family orthonormal, and everything downstream (partial sums, kernels,
// the error ledger) depends on it. Evaluation uses the three-term recurrence
//
//   h_{k+1}(t) = t sqrt(2/(k+1)) h_k(t) - sqrt(k/(k+1)) h_{k-1}(t),
//
// which is forward-stable for these weighted functions. Values underflow
// gracefully to zero for |t| well beyond sqrt(2K).

namespace detail {

// Recurrence coefficients sqrt(2/(k+1)), sqrt(k/(k+1)), cached per thread.
struct RecurrenceCache {
  std::vector<double> a, b;
  void grow(int K) {
    const std::size_t need = static_cast<std::size_t>(K) + 1;
    while (a.size() < need) {
      const double k = static_cast<double>(a.size());
      a.push_back(std::sqrt(2.0 / (k + 1.0)));
      b.push_back(std::sqrt(k / (k + 1.0)));
    }
  }
};

inline RecurrenceCache& recurrence_cache() {
  thread_local RecurrenceCache cache;
  return cache;
}

}  // namespace detail

/// Evaluate h_0(t), ..., h_K(t) into out (size K+1).
inline void eval_all(int K, double t, std::span<double> out) {
  if (K < 0) throw std::invalid_argument("hermite::eval_all: K must be >= 0");
  if (out.size() != static_cast<std::size_t>(K) + 1)
    throw std::invalid_argument("hermite::eval_all: output span has wrong size");
  auto& cache = detail::recurrence_cache();
  cache.grow(K);
  const double h0 = std::exp(-0.5 * t * t) / std::pow(std::numbers::pi, 0.25);
  out[0] = h0;
  if (K == 0) return;
  out[1] = std::numbers::sqrt2 * t * h0;
  for (int k = 1; k < K; ++k)
    out[k + 1] = t * cache.a[k] * out[k] - cache.b[k] * out[k - 1];
}

inline std::vector<double> eval_all(int K, double t) {
  std::vector<double> out(static_cast<std::size_t>(K) + 1);
  eval_all(K, t, out);
  return out;
}

struct CenterValues {
  double h_even;   // h_{2n}(0)
  double dh_odd;   // h'_{2n+1}(0)
};

/// h_{2n}(0) and h'_{2n+1}(0), in log space to survive large n.
///
/// h_{2n}(0)   = (-1)^n pi^{-1/4} 2^{-n} sqrt((2n)!) / n!
/// h'_{2n+1}(0) = h_{2n}(0) * sqrt(4n + 2)
inline CenterValues values_at_zero(int n) {
  if (n < 0) throw std::invalid_argument("hermite::values_at_zero: n must be >= 0");
  const double log_even = -0.25 * std::log(std::numbers::pi) - n * std::numbers::ln2 +
                          0.5 * std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double h_even = sign * std::exp(log_even);
  const double dh_odd = sign * std::exp(log_even + 0.5 * std::log(4.0 * n + 2.0));
  return {h_even, dh_odd};
}

struct KernelValue {
  double x;
  double alpha;
  double value;
};

/// Normalization sqrt((2n+1)/2): this times k_{2n}(x, alpha) reproduces the
/// kernel sum h_0(x)h_0(alpha) + ... + h_{2n}(x)h_{2n}(alpha).
inline double cd_normalization(int n) { return std::sqrt((2.0 * n + 1.0) / 2.0); }

inline constexpr double kCdDiagonalGuard = 1e-8;

/// Christoffel-Darboux kernel k_{2n}(x, alpha). Near the diagonal the quotient
/// form loses all precision, so below |x - alpha| = 1e-8 the summed form is
/// used directly.
inline KernelValue cd_kernel(int n, double x, double alpha) {
  if (n < 0) throw std::invalid_argument("hermite::cd_kernel: n must be >= 0");
  const int K = 2 * n;
  thread_local std::vector<double> hx, ha;
  hx.resize(static_cast<std::size_t>(K) + 2);
  ha.resize(static_cast<std::size_t>(K) + 2);
  eval_all(K + 1, x, hx);
  eval_all(K + 1, alpha, ha);
  double value;
  if (std::abs(x - alpha) < kCdDiagonalGuard) {
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) sum += hx[k] * ha[k];
    value = sum / cd_normalization(n);
  } else {
    value = (hx[K + 1] * ha[K] - ha[K + 1] * hx[K]) / (x - alpha);
  }
  return {x, alpha, value};
}

}  // namespace hermbound::hermite
