#pragma once

// Floating-point quadrature of the two integral forms of E[exp(-s X_(n))],
// X_(n) the maximum of n unit-rate exponentials:
//
//   cdf form:      s * int_0^inf (1 - e^-t)^n e^-st dt
//   density form:  n * int_0^1 (1 - w)^s w^(n-1) dw      (n >= 1)

#include <cstddef>
#include <functional>

namespace binid {

struct QuadratureResult {
  double value = 0.0;
  double estimated_error = 0.0;
  std::size_t evaluations = 0;
};

/// Smallest accepted tolerance.
inline constexpr double kMinTolerance = 1e-13;

struct SimpsonOptions {
  /// Subdivision levels applied unconditionally before error control starts.
  int min_depth = 6;
  int max_depth = 50;
  std::size_t max_evaluations = 50'000'000;
};

/// Adaptive Simpson on [a, b] with the classic |S2 - S1| <= 15 eps
/// acceptance test and Richardson-corrected panels. estimated_error is the sum
/// of |S2 - S1|/15 over accepted panels. Panels that reach max_depth are
/// accepted as they are (integrands with unbounded derivatives at an endpoint,
/// such as (1 - w)^0.5, end up there). Throws ToleranceNotMet if the
/// evaluation budget is spent or the error estimate exceeds tol.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  const SimpsonOptions& options = {});

/// Integrates the cdf form on [0, T] with T = ln(2/tol)/s, so the dropped
/// tail is below tol/2; the remaining tol/2 goes to the quadrature.
QuadratureResult laplace_via_cdf_quadrature(double s, unsigned n, double tol);

/// Integrates the density form on [0, 1]. Throws NRequired for n = 0.
QuadratureResult laplace_via_density_quadrature(double s, unsigned n, double tol);

}  // namespace binid
