#include "binid/laplace_numeric.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "binid/error.hpp"

namespace binid {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  const SimpsonOptions& options;
  std::size_t evaluations = 0;
  double error = 0.0;
  bool exhausted = false;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  // [a, b] with f(a) = fa, f(m) = fm, f(b) = fb and Simpson estimate whole.
  double refine(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;

    if (depth >= options.min_depth && std::abs(delta) <= 15.0 * eps) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    // Panels at the depth limit are accepted; the global error estimate
    // still has to meet the tolerance.
    if (depth >= options.max_depth || evaluations >= options.max_evaluations) {
      exhausted = exhausted || evaluations >= options.max_evaluations;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }
};

void check_inputs(double s, double tol) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::NonPositiveS, "s must be a finite positive number, got " + std::to_string(s));
  }
  if (!(tol >= kMinTolerance) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidTolerance, "tolerance must be >= 1e-13, got " + std::to_string(tol));
  }
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  const SimpsonOptions& options) {
  SimpsonState state{f, options};
  const double fa = state.eval(a);
  const double fb = state.eval(b);
  const double fm = state.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = state.refine(a, b, fa, fm, fb, whole, tol, 0);
  if (state.exhausted || state.error > tol) {
    throw Error(ErrorCode::ToleranceNotMet, "adaptive Simpson on [" + std::to_string(a) + ", " + std::to_string(b) +
                                                "] stopped with error estimate " + std::to_string(state.error) +
                                                " after " + std::to_string(state.evaluations) + " evaluations");
  }
  return {value, state.error, state.evaluations};
}

QuadratureResult laplace_via_cdf_quadrature(double s, unsigned n, double tol) {
  check_inputs(s, tol);
  const double upper = std::log(2.0 / tol) / s;
  const double tail_bound = std::exp(-s * upper);
  const auto integrand = [s, n](double t) {
    return s * std::pow(-std::expm1(-t), static_cast<double>(n)) * std::exp(-s * t);
  };
  QuadratureResult r = adaptive_simpson(integrand, 0.0, upper, 0.5 * tol);
  r.estimated_error += tail_bound;
  return r;
}

QuadratureResult laplace_via_density_quadrature(double s, unsigned n, double tol) {
  check_inputs(s, tol);
  if (n == 0) {
    throw Error(ErrorCode::NRequired, "the density form needs n >= 1");
  }
  const auto integrand = [s, n](double w) {
    return static_cast<double>(n) * std::pow(1.0 - w, s) * std::pow(w, static_cast<double>(n - 1));
  };
  // s > 0 and n >= 1: the integrand is continuous on the closed interval.
  assert(std::isfinite(integrand(0.0)) && std::isfinite(integrand(1.0)));
  return adaptive_simpson(integrand, 0.0, 1.0, tol);
}

}  // namespace binid
