#include "iso/singular_gmt.hpp"

#include <algorithm>
#include <cmath>

#include "iso/constants.hpp"
#include "iso/error.hpp"
#include "iso/quadrature.hpp"
#include "iso/simd/kernels.hpp"

namespace iso::gmt {

namespace {

// Measure of a geodesic cap of angular radius theta on the unit S^m.
double cap_measure(int m, double theta) {
  if (m == 1) return 2.0 * theta;
  if (m == 2) {
    const double s = std::sin(0.5 * theta);
    return 4.0 * kPi * s * s;
  }
  auto f = [m](double p) { return std::pow(std::sin(p), m - 1); };
  return unit_sphere_measure(m - 1) * quad::integrate(f, 0.0, theta, 1e-12);
}

void require_grid(const std::vector<double>& rho) {
  if (rho.empty()) throw Error(ErrorKind::validation, "rho grid is empty");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) throw Error(ErrorKind::validation, "rho grid values must be positive");
    if (i > 0 && !(rho[i] > rho[i - 1])) throw Error(ErrorKind::validation, "rho grid must increase");
  }
}

}  // namespace

const char* to_string(Surface s) noexcept {
  switch (s) {
    case Surface::circle: return "circle";
    case Surface::sphere: return "sphere";
    case Surface::cone: return "cone";
  }
  return "unknown";
}

double nominal_sup_H(Surface s) { return s == Surface::cone ? 0.0 : 1.0; }

int surface_dimension(const MonotonicityCase& c) {
  switch (c.surface) {
    case Surface::circle: return 1;
    case Surface::sphere: return c.m;
    case Surface::cone: return 2;
  }
  return 0;
}

std::vector<MonotonicitySample> monotonicity_profile(const MonotonicityCase& c) {
  require_grid(c.rho_grid);
  if (c.surface == Surface::sphere && c.m < 1) throw Error(ErrorKind::validation, "sphere dimension m must be >= 1");
  if (c.surface == Surface::cone && !(c.cone_angle > 0.0 && c.cone_angle <= 0.5 * kPi)) {
    throw Error(ErrorKind::validation, "cone angle must lie in (0, pi/2]");
  }
  const int m = surface_dimension(c);
  std::vector<MonotonicitySample> out;
  out.reserve(c.rho_grid.size());
  for (double rho : c.rho_grid) {
    MonotonicitySample s;
    s.rho = rho;
    double r = rho;
    if (c.surface != Surface::cone && rho > 2.0) {
      r = 2.0;
      s.clamped = true;
    }
    switch (c.surface) {
      case Surface::circle:
        s.mass = 4.0 * std::asin(0.5 * r);
        break;
      case Surface::sphere:
        // A chord of length r subtends the angle 2 asin(r/2); on S^2 the cap
        // area is pi r^2 exactly.
        s.mass = (m == 2) ? kPi * r * r : cap_measure(m, 2.0 * std::asin(0.5 * r));
        break;
      case Surface::cone:
        s.mass = kPi * r * r * std::sin(c.cone_angle);
        break;
    }
    s.profile = std::exp(c.lambda * rho) * std::pow(rho, -m) * s.mass;
    out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> check_monotone(std::span<const double> values) {
  if (values.size() < 2) return {};
  return simd::decreasing_steps(values, 1e-12);
}

double ambient_H_bound(double supH_M, double H_sigma, int n, int l, double A) {
  if (supH_M < 0.0 || H_sigma < 0.0 || A < 0.0 || n < 1 || l < 1) {
    throw Error(ErrorKind::domain, "ambient mean-curvature bound needs nonnegative inputs and n, l >= 1");
  }
  return supH_M + H_sigma + static_cast<double>(n) * l * A;
}

CutoffBudget cutoff_budget(const RadiusFamily& f) {
  if (f.n < 8) throw Error(ErrorKind::validation, "cutoff budget needs n >= 8, got " + std::to_string(f.n));
  if (f.radii.empty()) throw Error(ErrorKind::validation, "radius family is empty");
  if (!(f.delta > 0.0)) throw Error(ErrorKind::validation, "delta must be positive");
  if (f.C0 < 0.0 || f.C < 0.0 || !std::isfinite(f.H)) {
    throw Error(ErrorKind::validation, "constants C0 and C must be nonnegative and H finite");
  }

  CutoffBudget b;
  const auto r = std::span<const double>(f.radii);
  for (double ri : f.radii) {
    if (!(ri > 0.0)) {
      b.admissible = false;
      b.violations.push_back("radius " + std::to_string(ri) + " is not positive");
      break;
    }
  }
  const double max_r = *std::max_element(f.radii.begin(), f.radii.end());
  if (max_r > f.delta) {
    b.admissible = false;
    b.violations.push_back("radius " + std::to_string(max_r) + " exceeds delta " + std::to_string(f.delta));
  }
  if (f.delta > 1.0) {
    b.admissible = false;
    b.violations.push_back("delta > 1: the H^2 delta^6 term no longer folds into delta^4");
  }

  const double s_n1 = simd::power_sum(r, f.n - 1);
  const double s_n3 = simd::power_sum(r, f.n - 3);
  b.sum_r_n7 = simd::power_sum(r, f.n - 7);
  if (b.sum_r_n7 > 1.0) {
    b.admissible = false;
    b.violations.push_back("sum r^{n-7} = " + std::to_string(b.sum_r_n7) + " exceeds 1");
  }

  const double doubling = std::ldexp(1.0, f.n - 1);
  const double d2 = f.delta * f.delta;
  const double d4 = d2 * d2;
  const double d6 = d4 * d2;
  b.area_term = f.C * s_n1;
  b.doubled_area_term = doubling * b.area_term;
  b.dirichlet_term = doubling * f.C * (f.H * f.H * s_n1 + f.C0 * f.C0 * s_n3);
  b.area_bound = f.C * doubling * d6;
  b.C1 = doubling * f.C * (f.H * f.H + f.C0 * f.C0);
  b.dirichlet_bound = b.C1 * d4;
  b.area_ok = b.doubled_area_term <= b.area_bound * (1.0 + 1e-12);
  b.dirichlet_ok = b.dirichlet_term <= b.dirichlet_bound * (1.0 + 1e-12);
  return b;
}

AreaRatio area_ratio_constant(const WarpedMetric& metric, double t, const std::vector<double>& rho_grid) {
  require_grid(rho_grid);
  const int n = metric.dimension();
  const double R = eval_warp(metric, t).f;
  if (!(R > 0.0)) throw Error(ErrorKind::singular_point, "slice at t = " + std::to_string(t) + " is a point");
  AreaRatio out;
  out.rho = rho_grid;
  out.ratio.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    const double area = std::pow(R, n - 1) * cap_measure(n - 1, std::min(rho / R, kPi));
    const double ratio = area / std::pow(rho, n - 1);
    out.ratio.push_back(ratio);
    if (ratio > out.constant) {
      out.constant = ratio;
      out.rho_at_max = rho;
    }
  }
  return out;
}

}  // namespace iso::gmt
