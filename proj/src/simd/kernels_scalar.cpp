#include <cmath>

#include "iso/error.hpp"
#include "iso/simd/kernels.hpp"

namespace iso::simd::scalar {

namespace {

double ipow(double base, int exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

double power_sum(std::span<const double> values, int exponent) {
  if (exponent < 0) throw Error(ErrorKind::domain, "power_sum needs a nonnegative exponent");
  double sum = 0.0;
  for (double v : values) sum += ipow(v, exponent);
  return sum;
}

void centered_difference(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
  const std::size_t n = x.size();
  if (y.size() != n || out.size() != n) {
    throw Error(ErrorKind::validation, "centered_difference: size mismatch");
  }
  if (n < 2) throw Error(ErrorKind::resolution, "centered_difference needs two samples");
  if (n == 2) {
    out[0] = out[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    const double wm = -h2 / (h1 * (h1 + h2));
    const double w0 = (h2 - h1) / (h1 * h2);
    const double wp = h1 / (h2 * (h1 + h2));
    out[i] = wm * y[i - 1] + w0 * y[i] + wp * y[i + 1];
  }
  {
    const double h1 = x[1] - x[0];
    const double h2 = x[2] - x[1];
    out[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1] -
             h1 / (h2 * (h1 + h2)) * y[2];
  }
  {
    const double h1 = x[n - 2] - x[n - 3];
    const double h2 = x[n - 1] - x[n - 2];
    out[n - 1] = h2 / (h1 * (h1 + h2)) * y[n - 3] - (h1 + h2) / (h1 * h2) * y[n - 2] +
                 (2.0 * h2 + h1) / (h2 * (h1 + h2)) * y[n - 1];
  }
}

std::vector<std::size_t> decreasing_steps(std::span<const double> values, double rel_tol) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double drop = values[i] - values[i + 1];
    if (drop > rel_tol * std::fabs(values[i])) hits.push_back(i);
  }
  return hits;
}

}  // namespace iso::simd::scalar
