#include "iso/warped_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iso/constants.hpp"
#include "iso/error.hpp"
#include "iso/quadrature.hpp"

namespace iso {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dimension(int n) {
  if (n < 3) throw Error(ErrorKind::validation, "dimension n = " + std::to_string(n) + " below minimum 3");
}

}  // namespace

TabulatedWarp::TabulatedWarp(std::vector<double> t, std::vector<double> f, double t_max)
    : t_max_(t_max) {
  if (t.size() != f.size()) throw Error(ErrorKind::validation, "tabulated warp: t and f sizes differ");
  if (t.size() < 2) throw Error(ErrorKind::validation, "tabulated warp needs at least two samples");
  if (!(t_max > 0.0)) throw Error(ErrorKind::validation, "tabulated warp: t_max must be positive");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] > 0.0 && t[k] < t_max)) {
      throw Error(ErrorKind::validation, "tabulated warp: sample t must lie strictly inside (0, t_max)");
    }
    if (k > 0 && !(t[k] > t[k - 1])) {
      throw Error(ErrorKind::validation, "tabulated warp: t samples must be strictly increasing");
    }
    if (!(f[k] > 0.0)) throw Error(ErrorKind::validation, "tabulated warp: f samples must be positive");
  }
  std::vector<double> knots;
  std::vector<double> values;
  knots.reserve(t.size() + 2);
  values.reserve(t.size() + 2);
  knots.push_back(0.0);
  values.push_back(0.0);
  knots.insert(knots.end(), t.begin(), t.end());
  values.insert(values.end(), f.begin(), f.end());
  knots.push_back(t_max);
  values.push_back(0.0);
  interp_ = MonotoneCubic(std::move(knots), std::move(values));
}

WarpedMetric::WarpedMetric(int n, Warp warp, double t_max)
    : n_(n), warp_(std::move(warp)), t_max_(t_max) {}

WarpedMetric WarpedMetric::round_sphere(int n, double radius) {
  require_dimension(n);
  if (!(radius > 0.0)) throw Error(ErrorKind::validation, "sphere radius must be positive");
  return WarpedMetric(n, RoundSphere{radius}, kPi * radius);
}

WarpedMetric WarpedMetric::football(int n, double c, double radius) {
  require_dimension(n);
  if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorKind::validation, "football c must lie in (0, 1]");
  if (!(radius > 0.0)) throw Error(ErrorKind::validation, "football radius must be positive");
  return WarpedMetric(n, Football{c, radius}, kPi * radius);
}

WarpedMetric WarpedMetric::cylinder(int n, double radius, double length) {
  require_dimension(n);
  if (!(radius > 0.0)) throw Error(ErrorKind::validation, "cylinder radius must be positive");
  if (!(length > 0.0)) throw Error(ErrorKind::validation, "cylinder length must be positive");
  return WarpedMetric(n, Cylinder{radius, length}, length);
}

WarpedMetric WarpedMetric::tabulated(int n, std::vector<double> t, std::vector<double> f,
                                     double t_max) {
  require_dimension(n);
  return WarpedMetric(n, TabulatedWarp(std::move(t), std::move(f), t_max), t_max);
}

bool WarpedMetric::closed() const { return !std::holds_alternative<Cylinder>(warp_); }

bool WarpedMetric::analytic() const { return !std::holds_alternative<TabulatedWarp>(warp_); }

WarpValue eval_warp(const WarpedMetric& metric, double t) {
  if (!(t >= 0.0 && t <= metric.t_max())) {
    throw Error(ErrorKind::domain, "t = " + std::to_string(t) + " outside [0, " +
                                       std::to_string(metric.t_max()) + "]");
  }
  const bool at_pole = (t == 0.0 || t == metric.t_max());
  return std::visit(
      Overloaded{
          [&](const RoundSphere& s) {
            const double u = t / s.radius;
            const double sn = at_pole ? 0.0 : std::sin(u);
            const double cs = std::cos(u);
            return WarpValue{s.radius * sn, cs, -sn / s.radius, sn * sn};
          },
          [&](const Football& b) {
            const double u = t / b.radius;
            const double sn = at_pole ? 0.0 : std::sin(u);
            const double cs = std::cos(u);
            return WarpValue{b.radius * b.c * sn, b.c * cs, -b.c * sn / b.radius,
                             (1.0 - b.c) * (1.0 + b.c) + b.c * b.c * sn * sn};
          },
          [&](const Cylinder& c) { return WarpValue{c.radius, 0.0, 0.0, 1.0}; },
          [&](const TabulatedWarp& w) {
            if (at_pole) {
              throw Error(ErrorKind::unsupported_point,
                          "tabulated warp cannot be evaluated at a pole (t = " + std::to_string(t) + ")");
            }
            WarpValue v;
            w.evaluate(t, v.f, v.df, v.d2f);
            v.one_minus_df2 = 1.0 - v.df * v.df;
            return v;
          },
      },
      metric.warp());
}

CurvatureData curvature_at(const WarpedMetric& metric, double t) {
  const WarpValue w = eval_warp(metric, t);
  if (!(w.f > 0.0)) {
    throw Error(ErrorKind::singular_point, "curvature undefined where the warp vanishes (t = " +
                                               std::to_string(t) + ")");
  }
  const double n = metric.dimension();
  const double radial_term = -w.d2f / w.f;
  const double sphere_term = w.one_minus_df2 / (w.f * w.f);
  CurvatureData c;
  c.ric_radial = (n - 1.0) * radial_term;
  c.ric_tangential = radial_term + (n - 2.0) * sphere_term;
  c.scalar = 2.0 * (n - 1.0) * radial_term + (n - 1.0) * (n - 2.0) * sphere_term;
  return c;
}

namespace {

std::vector<double> curvature_sample_points(const WarpedMetric& metric, int grid) {
  std::vector<double> pts;
  if (metric.analytic()) {
    const double tm = metric.t_max();
    const int lo = metric.closed() ? 1 : 0;
    const int hi = metric.closed() ? grid - 1 : grid;
    for (int k = lo; k <= hi; ++k) pts.push_back(tm * k / grid);
    if (metric.closed()) {
      for (int j = 1; j <= 40; ++j) {
        const double eps = tm * std::ldexp(1.0, -j);
        pts.push_back(eps);
        pts.push_back(tm - eps);
      }
    }
  } else {
    const auto& w = std::get<TabulatedWarp>(metric.warp());
    const double a = w.first_sample();
    const double b = w.last_sample();
    for (int k = 0; k <= grid; ++k) pts.push_back(a + (b - a) * k / grid);
  }
  return pts;
}

std::pair<double, double> curvature_minima(const WarpedMetric& metric, int grid) {
  double min_ric = std::numeric_limits<double>::infinity();
  double min_scalar = std::numeric_limits<double>::infinity();
  for (double t : curvature_sample_points(metric, grid)) {
    const CurvatureData c = curvature_at(metric, t);
    min_ric = std::min(min_ric, c.min_ricci());
    min_scalar = std::min(min_scalar, c.scalar);
  }
  return {min_ric, min_scalar};
}

}  // namespace

CurvatureBounds curvature_bounds(const WarpedMetric& metric, int grid) {
  if (grid < 8) throw Error(ErrorKind::domain, "curvature grid must have at least 8 cells");
  const auto [ric0, r0] = curvature_minima(metric, grid);
  const auto [ric1, r1] = curvature_minima(metric, 2 * grid);
  CurvatureBounds b;
  b.min_ricci = std::min(ric0, ric1);
  b.min_scalar = std::min(r0, r1);
  b.refinement_tol = std::max(std::fabs(ric1 - ric0), std::fabs(r1 - r0));
  const double scale = std::max({1.0, std::fabs(b.min_ricci), std::fabs(b.min_scalar)});
  b.conclusive = b.refinement_tol <= 1e-6 * scale;
  return b;
}

double slice_area(const WarpedMetric& metric, double t) {
  const WarpValue w = eval_warp(metric, t);
  const int n = metric.dimension();
  return unit_sphere_measure(n - 1) * std::pow(w.f, n - 1);
}

double volume_between(const WarpedMetric& metric, double t0, double t1) {
  if (!(t0 >= 0.0 && t1 <= metric.t_max() && t0 <= t1)) {
    throw Error(ErrorKind::domain, "volume interval outside the model domain");
  }
  if (t0 == t1) return 0.0;
  const int n = metric.dimension();
  const double omega = unit_sphere_measure(n - 1);
  if (metric.analytic()) {
    auto integrand = [&](double s) { return std::pow(eval_warp(metric, s).f, n - 1); };
    return omega * quad::integrate(integrand, t0, t1);
  }
  // Piecewise cubic: integrate knot interval by knot interval.
  const auto& w = std::get<TabulatedWarp>(metric.warp());
  auto integrand = [&](double s) {
    double f, df, d2f;
    w.evaluate(s, f, df, d2f);
    return std::pow(f, n - 1);
  };
  double sum = 0.0;
  double a = t0;
  for (double knot : w.knots()) {
    if (knot <= a) continue;
    const double b = std::min(knot, t1);
    sum += quad::integrate(integrand, a, b);
    a = b;
    if (a >= t1) break;
  }
  return omega * sum;
}

double total_volume(const WarpedMetric& metric) {
  return volume_between(metric, 0.0, metric.t_max());
}

Slice slice_at(const WarpedMetric& metric, double t) {
  const WarpValue w = eval_warp(metric, t);
  if (!(w.f > 0.0)) {
    throw Error(ErrorKind::singular_point, "slice at a pole (t = " + std::to_string(t) + ")");
  }
  const int n = metric.dimension();
  const double ratio = w.df / w.f;
  Slice s;
  s.t = t;
  s.area = unit_sphere_measure(n - 1) * std::pow(w.f, n - 1);
  s.volume = volume_between(metric, 0.0, t);
  s.mean_curvature = (n - 1) * ratio;
  s.second_fundamental_norm_sq = (n - 1) * ratio * ratio;
  return s;
}

Profile candidate_profile(const WarpedMetric& metric, int grid_size) {
  if (grid_size < 16) throw Error(ErrorKind::domain, "profile grid_size must be at least 16");
  const int n = metric.dimension();
  const double tm = metric.t_max();
  const double omega = unit_sphere_measure(n - 1);

  Profile p;
  p.n = n;
  p.closed = metric.closed();
  p.t_grid.resize(grid_size);
  p.v_grid.resize(grid_size);
  p.a_values.resize(grid_size);
  p.a_prime.resize(grid_size);

  double volume = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    const double t = (k == grid_size - 1) ? tm : tm * k / (grid_size - 1);
    p.t_grid[k] = t;
    if (k > 0) volume += volume_between(metric, p.t_grid[k - 1], t);
    p.v_grid[k] = volume;
    const bool pole = p.closed && (k == 0 || k == grid_size - 1);
    if (pole) {
      p.a_values[k] = 0.0;
      p.a_prime[k] = kNaN;
      continue;
    }
    const WarpValue w = eval_warp(metric, t);
    p.a_values[k] = omega * std::pow(w.f, n - 1);
    p.a_prime[k] = (n - 1) * w.df / w.f;
  }
  for (int k = 1; k < grid_size; ++k) {
    if (!(p.v_grid[k] > p.v_grid[k - 1])) {
      throw Error(ErrorKind::validation, "profile volumes are not strictly increasing at sample " +
                                             std::to_string(k));
    }
  }
  p.total_volume = p.v_grid.back();

  if (p.closed && metric.analytic()) {
    const double scale = n * std::pow(omega, 1.0 / (n - 1));
    p.start_F_slope = scale * eval_warp(metric, 0.0).df;
    p.end_F_slope = scale * eval_warp(metric, tm).df;
  }
  return p;
}

}  // namespace iso
