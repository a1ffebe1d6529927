#include "iso/constants.hpp"

#include <cmath>

#include "iso/error.hpp"

namespace iso {

double unit_sphere_measure(int k) {
  if (k < 0) throw Error(ErrorKind::domain, "sphere dimension must be nonnegative");
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

double round_sphere_volume(int n, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::domain, "radius must be positive");
  return unit_sphere_measure(n) * std::pow(radius, n);
}

}  // namespace iso
