#pragma once

// Adaptive quadrature front end plus the substitutions that tame
// inverse-square-root endpoint singularities.

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "iso/error.hpp"

namespace iso::quad {

inline constexpr double kDefaultRelTol = 1e-10;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Throws quadrature_failure when the
/// result is non-finite or the error estimate stays well above the request.
template <class F>
Estimate integrate_estimate(F&& f, double a, double b, double rel_tol = kDefaultRelTol,
                            unsigned max_depth = 18) {
  Estimate est;
  if (a == b) return est;
  est.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &est.error, &est.l1);
  const double allowed = 100.0 * rel_tol * est.l1 + std::numeric_limits<double>::min();
  if (!std::isfinite(est.value) || !(est.error <= allowed)) {
    throw Error(ErrorKind::quadrature_failure,
                "adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                    "] stalled (error estimate " + std::to_string(est.error) + ")");
  }
  return est;
}

template <class F>
double integrate(F&& f, double a, double b, double rel_tol = kDefaultRelTol) {
  return integrate_estimate(std::forward<F>(f), a, b, rel_tol).value;
}

/// Integral over [a, b] of an integrand with an integrable (b - x)^{-1/2}
/// blow-up at b. The substitution x = b - (b - a) v^2 turns it into a smooth
/// integral over v in [0, 1]; the nodes never touch v = 0.
template <class F>
double integrate_sqrt_endpoint(F&& f, double a, double b, double rel_tol = kDefaultRelTol) {
  if (a == b) return 0.0;
  const double len = b - a;
  auto g = [&](double v) { return 2.0 * len * v * f(b - len * v * v); };
  return integrate(g, 0.0, 1.0, rel_tol);
}

/// Same as integrate_sqrt_endpoint with the singular endpoint at a.
template <class F>
double integrate_sqrt_startpoint(F&& f, double a, double b, double rel_tol = kDefaultRelTol) {
  if (a == b) return 0.0;
  const double len = b - a;
  auto g = [&](double v) { return 2.0 * len * v * f(a + len * v * v); };
  return integrate(g, 0.0, 1.0, rel_tol);
}

}  // namespace iso::quad
