#pragma once

// Desk-scale checks of the measure-theoretic estimates: the monotonicity
// formula on surfaces with closed-form ball masses, the ambient mean-curvature
// bound, and the covering/cutoff error budgets.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "iso/constants.hpp"
#include "iso/warped_geometry.hpp"

namespace iso::gmt {

enum class Surface { circle, sphere, cone };

const char* to_string(Surface s) noexcept;

struct MonotonicityCase {
  Surface surface = Surface::sphere;
  /// Intrinsic dimension of the unit sphere S^m (sphere case only).
  int m = 2;
  /// Half-opening angle of the cone over a circle, in (0, pi/2].
  double cone_angle = 0.25 * kPi;
  double lambda = 1.0;
  std::vector<double> rho_grid;
};

/// Nominal bound on |H| (normalized mean curvature) the case is checked
/// against: 1 for the unit circle and unit spheres, 0 for the cone.
double nominal_sup_H(Surface s);

int surface_dimension(const MonotonicityCase& c);

struct MonotonicitySample {
  double rho = 0.0;
  double mass = 0.0;
  double profile = 0.0;
  bool clamped = false;
};

/// e^{lambda rho} rho^{-m} mu(B_rho(xi)), with xi a point of the circle or
/// sphere and the apex of the cone. Radii past the diameter are clamped.
std::vector<MonotonicitySample> monotonicity_profile(const MonotonicityCase& c);

/// Indices i where values[i + 1] drops below values[i] by more than 1e-12
/// relative.
std::vector<std::size_t> check_monotone(std::span<const double> values);

/// sup|H of M in R^{m+l}| + |H of Sigma in M| + n l A.
double ambient_H_bound(double supH_M, double H_sigma, int n, int l, double A);

struct RadiusFamily {
  std::vector<double> radii;
  double delta = 0.0;
  int n = 8;
  double C0 = 1.0;
  double C = 1.0;
  double H = 0.0;
};

struct CutoffBudget {
  double area_term = 0.0;          // C sum r^{n-1}
  double doubled_area_term = 0.0;  // on doubled balls: 2^{n-1} area_term
  double dirichlet_term = 0.0;     // 2^{n-1} C (H^2 sum r^{n-1} + C0^2 sum r^{n-3})
  double sum_r_n7 = 0.0;
  double area_bound = 0.0;         // C 2^{n-1} delta^6
  double C1 = 0.0;                 // 2^{n-1} C (H^2 + C0^2)
  double dirichlet_bound = 0.0;    // C1 delta^4
  bool area_ok = false;
  bool dirichlet_ok = false;
  bool admissible = true;
  std::vector<std::string> violations;
};

CutoffBudget cutoff_budget(const RadiusFamily& family);

struct AreaRatio {
  double constant = 0.0;
  double rho_at_max = 0.0;
  std::vector<double> rho;
  std::vector<double> ratio;
};

/// Largest (area of the intrinsic ball B_rho in the slice {t}) / rho^{n-1}
/// over the rho grid. The slice is a round sphere, so every centre gives the
/// same value.
AreaRatio area_ratio_constant(const WarpedMetric& metric, double t, const std::vector<double>& rho_grid);

}  // namespace iso::gmt
