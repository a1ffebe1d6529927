#include "iso/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "iso/error.hpp"

namespace iso {

namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto end_slope = [](double h0, double h1, double del0, double del1) {
    double s = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (sign(s) != sign(del0)) {
      s = 0.0;
    } else if (sign(del0) != sign(del1) && std::fabs(s) > 3.0 * std::fabs(del0)) {
      s = 3.0 * del0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw Error(ErrorKind::validation, "interpolant needs matching knot/value arrays of size >= 2");
  }
  for (std::size_t k = 1; k < x_.size(); ++k) {
    if (!(x_[k] > x_[k - 1])) throw Error(ErrorKind::validation, "interpolation knots must increase strictly");
  }
  d_ = pchip_slopes(x_, y_);
}

void MonotoneCubic::evaluate(double t, double& value, double& first, double& second) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = static_cast<std::size_t>(std::distance(x_.begin(), it));
  k = std::clamp<std::size_t>(k, 1, x_.size() - 1) - 1;
  const double h = x_[k + 1] - x_[k];
  const double del = (y_[k + 1] - y_[k]) / h;
  const double d0 = d_[k];
  const double d1 = d_[k + 1];
  const double c2 = (3.0 * del - 2.0 * d0 - d1) / h;
  const double c3 = (d0 + d1 - 2.0 * del) / (h * h);
  const double s = t - x_[k];
  value = y_[k] + s * (d0 + s * (c2 + s * c3));
  first = d0 + s * (2.0 * c2 + 3.0 * c3 * s);
  second = 2.0 * c2 + 6.0 * c3 * s;
}

double MonotoneCubic::operator()(double t) const {
  double v, d1, d2;
  evaluate(t, v, d1, d2);
  return v;
}

}  // namespace iso
