#include "iso/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iso/error.hpp"

namespace iso {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_stencil(const WarpedMetric& metric, double t, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::domain, "finite-difference step must be positive");
  const double lo = t - h;
  const double hi = t + h;
  const bool closed = metric.closed();
  const bool inside = closed ? (lo > 0.0 && hi < metric.t_max()) : (lo >= 0.0 && hi <= metric.t_max());
  if (!inside) {
    throw Error(ErrorKind::domain, "stencil [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                       "] leaves the interior of the model");
  }
}

double relative(double fd, double exact, double scale) {
  return std::fabs(fd - exact) / std::max(std::fabs(exact), scale);
}

double mean_curvature(const WarpedMetric& metric, double t) {
  const WarpValue w = eval_warp(metric, t);
  return (metric.dimension() - 1) * w.df / w.f;
}

}  // namespace

VariationReport::VariationReport()
    : residual_first(kNaN),
      residual_H_dot(kNaN),
      residual_second(kNaN),
      order_estimate(kNaN),
      first_fd(kNaN),
      first_exact(kNaN),
      H_dot_fd(kNaN),
      H_dot_exact(kNaN),
      second_fd(kNaN),
      second_exact(kNaN) {}

VariationReport check_first_variation(const WarpedMetric& metric, double t, double h) {
  require_stencil(metric, t, h);
  VariationReport r;
  r.t = t;
  r.h = h;
  const Slice s = slice_at(metric, t);
  r.first_fd = (slice_area(metric, t + h) - slice_area(metric, t - h)) / (2.0 * h);
  r.first_exact = s.mean_curvature * s.area;
  r.residual_first = relative(r.first_fd, r.first_exact, s.area / metric.t_max());
  return r;
}

VariationReport check_mean_curvature_evolution(const WarpedMetric& metric, double t, double h) {
  require_stencil(metric, t, h);
  VariationReport r;
  r.t = t;
  r.h = h;
  const Slice s = slice_at(metric, t);
  const CurvatureData c = curvature_at(metric, t);
  r.H_dot_fd = (mean_curvature(metric, t + h) - mean_curvature(metric, t - h)) / (2.0 * h);
  r.H_dot_exact = -s.second_fundamental_norm_sq - c.ric_radial;
  const double len = metric.t_max();
  r.residual_H_dot = relative(r.H_dot_fd, r.H_dot_exact, 1.0 / (len * len));
  return r;
}

VariationReport check_second_variation(const WarpedMetric& metric, double t, double h) {
  require_stencil(metric, t, h);
  VariationReport r;
  r.t = t;
  r.h = h;
  const Slice s = slice_at(metric, t);
  const CurvatureData c = curvature_at(metric, t);
  const double a_minus = slice_area(metric, t - h);
  const double a_plus = slice_area(metric, t + h);
  // Volume increments integrated directly; differencing cumulative volumes
  // would cancel most of the digits.
  const double dv_minus = volume_between(metric, t - h, t);
  const double dv_plus = volume_between(metric, t, t + h);
  r.second_fd = 2.0 * ((a_plus - s.area) / dv_plus - (s.area - a_minus) / dv_minus) /
                (dv_plus + dv_minus);
  r.second_exact = (-s.second_fundamental_norm_sq - c.ric_radial) / s.area;
  const double len = metric.t_max();
  r.residual_second = relative(r.second_fd, r.second_exact, 1.0 / (s.area * len * len));
  return r;
}

VariationReport check_variations(const WarpedMetric& metric, double t, double h) {
  VariationReport r = check_first_variation(metric, t, h);
  const VariationReport hd = check_mean_curvature_evolution(metric, t, h);
  const VariationReport sv = check_second_variation(metric, t, h);
  r.H_dot_fd = hd.H_dot_fd;
  r.H_dot_exact = hd.H_dot_exact;
  r.residual_H_dot = hd.residual_H_dot;
  r.second_fd = sv.second_fd;
  r.second_exact = sv.second_exact;
  r.residual_second = sv.residual_second;
  return r;
}

double default_step(const WarpedMetric& metric) { return 1e-3 * metric.t_max(); }

double observed_order(double previous, double current) {
  if (previous == 0.0 && current == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(previous / current);
}

ConvergenceStudy convergence_study(const WarpedMetric& metric, double t, double h, int levels) {
  if (levels < 2) throw Error(ErrorKind::domain, "convergence study needs at least two levels");
  ConvergenceStudy study;
  study.order_first = study.order_H_dot = study.order_second = kNaN;
  double step = h;
  for (int level = 0; level < levels; ++level, step *= 0.5) {
    VariationReport r = check_variations(metric, t, step);
    if (level > 0) {
      const VariationReport& prev = study.levels.back();
      study.order_first = observed_order(prev.residual_first, r.residual_first);
      study.order_H_dot = observed_order(prev.residual_H_dot, r.residual_H_dot);
      study.order_second = observed_order(prev.residual_second, r.residual_second);
      r.order_estimate = std::min({study.order_first, study.order_H_dot, study.order_second});
    }
    study.levels.push_back(r);
  }
  return study;
}

}  // namespace iso
