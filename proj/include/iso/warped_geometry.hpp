#pragma once

// Rotationally symmetric model manifolds dt^2 + f(t)^2 g_{S^{n-1}} and the
// geodesic-sphere foliation used as the candidate isoperimetric profile.

#include <optional>
#include <variant>
#include <vector>

#include "iso/interpolation.hpp"

namespace iso {

struct RoundSphere {
  double radius = 1.0;
};

/// Cone-angle football f(t) = r c sin(t/r); c < 1 gives cone points at the poles.
struct Football {
  double c = 1.0;
  double radius = 1.0;
};

struct Cylinder {
  double radius = 1.0;
  double length = 1.0;
};

/// Monotone cubic (PCHIP) interpolant of strictly positive warp samples on an
/// interior grid. Knots (0, 0) and (t_max, 0) close the model at the poles.
class TabulatedWarp {
 public:
  TabulatedWarp(std::vector<double> t, std::vector<double> f, double t_max);

  double t_max() const { return t_max_; }
  double first_sample() const { return interp_.knots()[1]; }
  double last_sample() const { return interp_.knots()[interp_.knots().size() - 2]; }
  const std::vector<double>& knots() const { return interp_.knots(); }

  /// Interpolated value and derivatives at 0 < t < t_max.
  void evaluate(double t, double& f, double& df, double& d2f) const {
    interp_.evaluate(t, f, df, d2f);
  }

 private:
  MonotoneCubic interp_;
  double t_max_;
};

using Warp = std::variant<RoundSphere, Football, Cylinder, TabulatedWarp>;

class WarpedMetric {
 public:
  static WarpedMetric round_sphere(int n, double radius);
  static WarpedMetric football(int n, double c, double radius);
  static WarpedMetric cylinder(int n, double radius, double length);
  static WarpedMetric tabulated(int n, std::vector<double> t, std::vector<double> f,
                                double t_max);

  int dimension() const { return n_; }
  double t_max() const { return t_max_; }
  const Warp& warp() const { return warp_; }

  /// f vanishes at both ends of the domain.
  bool closed() const;
  /// Closed-form warp, i.e. not tabulated.
  bool analytic() const;

 private:
  WarpedMetric(int n, Warp warp, double t_max);

  int n_;
  Warp warp_;
  double t_max_;
};

struct WarpValue {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
  /// 1 - f'^2, evaluated without cancellation for the closed-form warps.
  double one_minus_df2 = 1.0;
};

/// Warp value and first two derivatives. Domain: 0 <= t <= t_max; tabulated
/// warps reject the poles themselves.
WarpValue eval_warp(const WarpedMetric& metric, double t);

struct CurvatureData {
  double ric_radial = 0.0;
  double ric_tangential = 0.0;
  double scalar = 0.0;

  double min_ricci() const { return ric_radial < ric_tangential ? ric_radial : ric_tangential; }
};

CurvatureData curvature_at(const WarpedMetric& metric, double t);

struct CurvatureBounds {
  double min_ricci = 0.0;
  double min_scalar = 0.0;
  /// Change in either minimum between the base grid and its refinement.
  double refinement_tol = 0.0;
  /// False when refinement moved a minimum by more than the certification
  /// tolerance; the numbers are then not a certificate.
  bool conclusive = true;
};

/// Infima of the smallest Ricci eigenvalue and of the scalar curvature over
/// an interior grid, geometric pole-approach points, and a twice finer grid.
CurvatureBounds curvature_bounds(const WarpedMetric& metric, int grid = 1024);

struct Slice {
  double t = 0.0;
  double area = 0.0;
  double volume = 0.0;
  double mean_curvature = 0.0;
  double second_fundamental_norm_sq = 0.0;
};

/// Geodesic sphere {t} with enclosed volume measured from t = 0.
Slice slice_at(const WarpedMetric& metric, double t);

double slice_area(const WarpedMetric& metric, double t);

/// Volume of the shell t0 <= t <= t1.
double volume_between(const WarpedMetric& metric, double t0, double t1);

double total_volume(const WarpedMetric& metric);

/// Sampled candidate isoperimetric profile A(V) from the geodesic-sphere
/// foliation. a_prime holds dA/dV = H at samples where f > 0 (NaN at poles);
/// start/end_F_slope carry the exact pole limit of d(A^{n/(n-1)})/dV for
/// closed-form closed models.
struct Profile {
  int n = 3;
  bool closed = false;
  double total_volume = 0.0;
  std::vector<double> t_grid;
  std::vector<double> v_grid;
  std::vector<double> a_values;
  std::vector<double> a_prime;
  std::optional<double> start_F_slope;
  std::optional<double> end_F_slope;
};

Profile candidate_profile(const WarpedMetric& metric, int grid_size);

}  // namespace iso
