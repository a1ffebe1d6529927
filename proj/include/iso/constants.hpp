#pragma once

#include <numbers>

namespace iso {

inline constexpr double kPi = std::numbers::pi;

/// k-dimensional measure of the unit sphere S^k in R^{k+1}:
/// 2 pi^{(k+1)/2} / Gamma((k+1)/2). The hypersurface constant omega_{n-1}
/// of an n-manifold is unit_sphere_measure(n - 1).
double unit_sphere_measure(int k);

/// Volume of the round n-sphere of the given radius.
double round_sphere_volume(int n, double radius);

}  // namespace iso
