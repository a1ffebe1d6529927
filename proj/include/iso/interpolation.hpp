#pragma once

#include <vector>

namespace iso {

/// Shape-preserving piecewise cubic Hermite interpolant (PCHIP slopes).
/// Second derivatives come from the local cubic and jump at the knots.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  /// x strictly increasing, at least two points.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;
  void evaluate(double t, double& value, double& first, double& second) const;

  const std::vector<double>& knots() const { return x_; }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace iso
