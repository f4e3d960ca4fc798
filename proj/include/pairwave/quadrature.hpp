#pragma once

#include <cstddef>
#include <functional>

#include "pairwave/core.hpp"

namespace pairwave {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct ComplexQuadratureResult {
  ComplexAmp value;
  double error_estimate = 0.0;  // combined |re| + |im| estimate
  std::size_t evaluations = 0;
  bool converged = false;
};

inline constexpr std::size_t kDefaultQuadratureBudget = 1'000'000;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b] with an
/// absolute tolerance. When the evaluation budget runs out the best estimate
/// is returned with converged == false.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           std::size_t budget = kDefaultQuadratureBudget);

/// Real and imaginary parts integrated separately, tol/2 each.
ComplexQuadratureResult integrate_complex(const std::function<ComplexAmp(double)>& f, double a,
                                          double b, double tol,
                                          std::size_t budget = kDefaultQuadratureBudget);

/// Throws NumericalError (with the achieved error) if r did not converge.
const QuadratureResult& require_converged(const QuadratureResult& r, const char* what);

}  // namespace pairwave
