#pragma once

// The substitution F = A^{n/(n-1)}, the Ricci curvature mass m(V), and the
// extremal phase-plane paths (x, y) = (F, F') whose travel time bounds volume.

#include <vector>

#include "iso/warped_geometry.hpp"

namespace iso {

struct FCurve {
  int n = 3;
  std::vector<double> v;
  std::vector<double> F;
  std::vector<double> F_prime;
};

/// F and dF/dV on the profile's volume grid. Interior slopes use dA/dV = H;
/// pole slopes come from the exact pole limit when the profile carries one,
/// otherwise from a fit of the first decade (NaN if too few samples).
/// Without slice derivatives the slopes fall back to centered differences.
FCurve to_F(const Profile& profile);

enum class MassAnchor { slice_derivative, exact_pole_slope, fitted };

const char* to_string(MassAnchor anchor) noexcept;

struct MassFunction {
  std::vector<double> v_grid;
  std::vector<double> m_values;
  /// Additive constant y0^2 = n^2 omega_{n-1}^{2/(n-1)}.
  double constant = 0.0;
  /// F'(first sample) used in m(first sample).
  double anchor_slope = 0.0;
  MassAnchor anchor = MassAnchor::slice_derivative;
};

/// m(V) = y0^2 - F'(V)^2 - (n^2 Ric0 / (n-1)) F(V)^{2/n}.
MassFunction ricci_mass(const Profile& profile, double ric0);

/// y0 = n omega_{n-1}^{1/(n-1)}, the value of F'(0) on a smooth manifold.
double phase_start_height(int n);

/// Slope of F near V = 0 fitted on F ~ a V + b V^{1+2/n} over the first
/// decade of volume samples. Throws resolution error below four samples.
double fitted_start_slope(const std::vector<double>& v, const std::vector<double>& F, int n);

struct PhasePath {
  int n = 3;
  double ric0 = 0.0;
  double m0 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  /// y(x) = sqrt(y0^2 - m0 - k x^{2/n}) is known exactly.
  bool closed_form = false;
};

/// Closed-form extremal path sampled at x = x0 sin^n(theta) on a uniform
/// theta grid, so the samples cluster where y turns over.
PhasePath extremal_path(int n, double ric0, double m0, int samples = 257);

/// Path from samples: x strictly increasing from 0, y > 0 before the last
/// sample and y = 0 at the last one.
PhasePath sampled_path(int n, std::vector<double> x, std::vector<double> y);

/// 2 * integral of dx / y over [0, x0].
double volume_from_path(const PhasePath& path);

/// Largest total volume allowed by Ric >= ric0 (attained at m0 = 0).
double bishop_bound(int n, double ric0);

}  // namespace iso
