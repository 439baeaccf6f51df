#pragma once

#include <stdexcept>
#include <string>

namespace hermbound {

/// Integrand returned NaN or infinity at a quadrature node.
struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive integration exhausted its subdivision budget.
struct NonConvergenceError : std::runtime_error {
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A truncation order K that must be even was odd (or negative).
struct OddTruncationError : std::invalid_argument {
  explicit OddTruncationError(const std::string& what) : std::invalid_argument(what) {}
};

struct BadIndexError : std::invalid_argument {
  explicit BadIndexError(const std::string& what) : std::invalid_argument(what) {}
};

/// A derivative-dependent functional was requested for a function without one.
struct MissingDerivativeError : std::invalid_argument {
  explicit MissingDerivativeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two inputs that must share (n, N, T) were built with different parameters.
struct MismatchedParamsError : std::invalid_argument {
  explicit MismatchedParamsError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hermbound
