#pragma once

// Finite-difference checks of the first/second variation identities along
// the unit-normal flow of geodesic spheres in a warped model.

#include <vector>

#include "iso/warped_geometry.hpp"

namespace iso {

/// Residuals are relative; fields a given check does not touch stay NaN.
struct VariationReport {
  double t = 0.0;
  double h = 0.0;

  double residual_first;
  double residual_H_dot;
  double residual_second;
  /// Smallest observed convergence order across the filled residuals,
  /// relative to the previous (twice larger) step. NaN on the first level.
  double order_estimate;

  double first_fd;       // (A(t+h) - A(t-h)) / 2h
  double first_exact;    // H A
  double H_dot_fd;       // (H(t+h) - H(t-h)) / 2h
  double H_dot_exact;    // -|II|^2 - Ric(nu, nu)
  double second_fd;      // d^2 A / dV^2 from the three-point stencil in V
  double second_exact;   // (-|II|^2 - Ric(nu, nu)) / A

  VariationReport();
};

VariationReport check_first_variation(const WarpedMetric& metric, double t, double h);
VariationReport check_mean_curvature_evolution(const WarpedMetric& metric, double t, double h);
VariationReport check_second_variation(const WarpedMetric& metric, double t, double h);

/// All three checks at one (t, h).
VariationReport check_variations(const WarpedMetric& metric, double t, double h);

/// 1e-3 t_max.
double default_step(const WarpedMetric& metric);

struct ConvergenceStudy {
  std::vector<VariationReport> levels;  // h, h/2, h/4, ...
  double order_first;
  double order_H_dot;
  double order_second;
};

/// Runs check_variations with the step halved `levels - 1` times. The
/// per-residual orders are from the last halving; an exactly vanishing
/// residual on consecutive levels counts as infinite order.
ConvergenceStudy convergence_study(const WarpedMetric& metric, double t, double h, int levels = 3);

/// log2(previous / current), +inf when both are zero.
double observed_order(double previous, double current);

}  // namespace iso
