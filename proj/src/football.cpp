#include "iso/football.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "iso/error.hpp"
#include "iso/parallel.hpp"
#include "iso/quadrature.hpp"
#include "iso/warped_geometry.hpp"

namespace iso::football {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi2 = kPi * kPi;

// 36 pi = 9 * (Gauss-Bonnet bound) in the unit normalization.
constexpr double k36Pi = 9.0 * kGaussBonnetBound;

constexpr double kUMin = 1e-4;
constexpr int kCoarseZ = 33;
constexpr int kBrentBits = 40;

void require_epsilon(double eps, bool allow_one) {
  if (!(eps > 0.0) || eps > 1.0 || (!allow_one && eps == 1.0)) {
    throw Error(ErrorKind::domain, "epsilon must lie in (0, 1" + std::string(allow_one ? "]" : ")") +
                                       ", got " + std::to_string(eps));
  }
}

struct SupResult {
  double arg = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  int local_maxima = 0;
};

// Coarse grid, then Brent's golden-section/parabolic search inside the
// neighbourhood of every coarse local maximum. Non-finite values never win.
template <class F>
SupResult sup_over(F&& f, double lo, double hi) {
  SupResult best;
  auto consider = [&](double arg, double v) {
    if (std::isfinite(v) && v > best.value) {
      best.value = v;
      best.arg = arg;
    }
  };
  if (!(hi > lo)) {
    consider(lo, f(lo));
    best.local_maxima = std::isfinite(best.value) ? 1 : 0;
    return best;
  }
  std::vector<double> zs(kCoarseZ), vs(kCoarseZ);
  for (int i = 0; i < kCoarseZ; ++i) {
    zs[i] = (i == kCoarseZ - 1) ? hi : lo + (hi - lo) * i / (kCoarseZ - 1);
    vs[i] = f(zs[i]);
    if (!std::isfinite(vs[i])) vs[i] = -std::numeric_limits<double>::infinity();
    consider(zs[i], vs[i]);
  }
  for (int i = 0; i < kCoarseZ; ++i) {
    if (!std::isfinite(vs[i])) continue;
    const bool left = (i == 0) || vs[i] > vs[i - 1];
    const bool right = (i == kCoarseZ - 1) || vs[i] >= vs[i + 1];
    if (!(left && right)) continue;
    ++best.local_maxima;
    const double a = zs[std::max(i - 1, 0)];
    const double b = zs[std::min(i + 1, kCoarseZ - 1)];
    std::uintmax_t iters = 200;
    auto neg = [&](double z) {
      const double v = f(z);
      return std::isfinite(v) ? -v : std::numeric_limits<double>::infinity();
    };
    const auto r = boost::math::tools::brent_find_minima(neg, a, b, kBrentBits, iters);
    consider(r.first, -r.second);
  }
  return best;
}

double x_of(double x0, double s) {
  const double c = std::cos(0.5 * kPi * s);
  return x0 * c * c * c;
}

double dx_of(double x0, double s) {
  const double c = std::cos(0.5 * kPi * s);
  return -1.5 * kPi * x0 * c * c * std::sin(0.5 * kPi * s);
}

}  // namespace

const char* to_string(Regime r) noexcept { return r == Regime::ricci ? "ricci" : "scalar"; }

const char* to_string(Method m) noexcept { return m == Method::oracle ? "oracle" : "as-written"; }

double scalar_odi_rhs(double A, double A_prime, double R0) {
  if (!(A > 0.0)) throw Error(ErrorKind::domain, "scalar bound needs A > 0");
  return kGaussBonnetBound / (A * A) - (0.75 * A_prime * A_prime + 0.5 * R0) / A;
}

double ricci_odi_rhs(double A, double A_prime, double epsilon, double Ric0) {
  if (!(A > 0.0)) throw Error(ErrorKind::domain, "Ricci bound needs A > 0");
  return -(0.5 * A_prime * A_prime + epsilon * Ric0) / A;
}

double f_second_from_area(double A, double A_prime, double A_second) {
  if (!(A > 0.0)) throw Error(ErrorKind::domain, "F'' transform needs A > 0");
  const double r = std::sqrt(A);
  return 1.5 * r * A_second + 0.75 * A_prime * A_prime / r;
}

double ricci_phase_rhs(double x, double epsilon) { return -3.0 * epsilon / std::cbrt(x); }

double scalar_phase_rhs(double x, double w) { return (k36Pi - w) / (6.0 * x) - 4.5 / std::cbrt(x); }

double z_lower(double epsilon) { return kGaussBonnetBound / (3.0 - 2.0 * epsilon); }

OraclePath oracle_path(double epsilon, double z, int steps, bool keep_samples) {
  require_epsilon(epsilon, true);
  if (steps < 8) throw Error(ErrorKind::domain, "oracle path needs at least 8 steps");
  if (!(z > 0.0) || z > kGaussBonnetBound * (1.0 + 1e-12)) {
    throw Error(ErrorKind::domain, "terminal area z must lie in (0, 4 pi]");
  }

  OraclePath p;
  p.epsilon = epsilon;
  p.z = z;
  p.x0 = std::pow(z, 1.5);
  const double x0 = p.x0;

  auto G = [&](Regime r, double x, double w) {
    return r == Regime::ricci ? ricci_phase_rhs(x, epsilon) : scalar_phase_rhs(x, w);
  };
  auto D = [&](double x, double w) { return scalar_phase_rhs(x, w) - ricci_phase_rhs(x, epsilon); };
  auto tol = [&](double x, double w) {
    return 1e-12 * (std::fabs(scalar_phase_rhs(x, w)) + std::fabs(ricci_phase_rhs(x, epsilon)));
  };
  // Variable s in [0, 1 - u_min]: x = x0 cos^3(pi s / 2), so dx/ds vanishes at
  // the turning point where y = 0 and y stays smooth in s.
  auto dw = [&](Regime r, double s, double w) { return 2.0 * G(r, x_of(x0, s), w) * dx_of(x0, s); };
  auto rk4 = [&](Regime r, double s, double w, double h) {
    const double k1 = dw(r, s, w);
    const double k2 = dw(r, s + 0.5 * h, w + 0.5 * h * k1);
    const double k3 = dw(r, s + 0.5 * h, w + 0.5 * h * k2);
    const double k4 = dw(r, s + h, w + h * k3);
    return w + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  };

  const double D0 = D(x0, 0.0);
  Regime regime = (D0 < -tol(x0, 0.0)) ? Regime::scalar : Regime::ricci;
  p.initial_regime = regime;
  const double G0 = G(regime, x0, 0.0);
  if (!(G0 < 0.0)) {
    throw Error(ErrorKind::domain, "terminal area z = " + std::to_string(z) + " gives a non-concave turning point");
  }
  // dV/ds at s = 0: x0 - x ~ a s^2 and y^2 ~ 2 |G0| a s^2.
  const double a = 3.0 * kPi2 * x0 / 8.0;
  const double g_turn = std::sqrt(2.0 * a / std::fabs(G0));
  auto g = [&](double s, double w) {
    if (s == 0.0) return g_turn;
    if (!(w > 0.0)) {
      throw Error(ErrorKind::integration_failure,
                  "oracle path lost y > 0 at x = " + std::to_string(x_of(x0, s)) + " (eps = " +
                      std::to_string(epsilon) + ", z = " + std::to_string(z) + ")");
    }
    return -dx_of(x0, s) / std::sqrt(w);
  };

  const double s_end = 1.0 - kUMin;
  const double h = s_end / steps;
  double s = 0.0;
  double w = 0.0;
  double integral = 0.0;
  if (keep_samples) p.samples.push_back({x0, 0.0, regime});

  int guard = 0;
  while (s < s_end) {
    if (++guard > 4 * steps) throw Error(ErrorKind::integration_failure, "oracle path failed to advance");
    double step = std::min(h, s_end - s);
    double w_b = rk4(regime, s, w, step);
    const double x_b = x_of(x0, s + step);
    const double D_b = D(x_b, w_b);
    const double tol_b = tol(x_b, w_b);
    const bool crossed = (regime == Regime::scalar && D_b > tol_b) || (regime == Regime::ricci && D_b < -tol_b);
    if (crossed) {
      const double D_a = D(x_of(x0, s), w);
      double theta = 0.0;
      if ((D_a > 0.0) != (D_b > 0.0) && D_a != 0.0) {
        auto phi = [&](double th) { return D(x_of(x0, s + th * step), rk4(regime, s, w, th * step)); };
        std::uintmax_t iters = 100;
        const auto r = boost::math::tools::toms748_solve(phi, 0.0, 1.0, D_a, D_b,
                                                         boost::math::tools::eps_tolerance<double>(50), iters);
        theta = 0.5 * (r.first + r.second);
      }
      step *= theta;
      w_b = step > 0.0 ? rk4(regime, s, w, step) : w;
    }
    if (step > 0.0) {
      const double w_mid = rk4(regime, s, w, 0.5 * step);
      integral += step * (g(s, w) + 4.0 * g(s + 0.5 * step, w_mid) + g(s + step, w_b)) / 6.0;
      s = (s + step >= s_end) ? s_end : s + step;
      w = w_b;
    }
    if (crossed) {
      regime = (regime == Regime::scalar) ? Regime::ricci : Regime::scalar;
      p.switch_x.push_back(x_of(x0, s));
      if (p.switch_x.size() > 8) {
        throw Error(ErrorKind::integration_failure, "active bound keeps switching (eps = " + std::to_string(epsilon) +
                                                        ", z = " + std::to_string(z) + ")");
      }
    }
    if (keep_samples) p.samples.push_back({x_of(x0, s), w, regime});
  }

  // Remaining sliver 0 <= x <= x(s_end); y is essentially constant there.
  const double x_end = x_of(x0, s_end);
  if (!(w > 0.0)) throw Error(ErrorKind::integration_failure, "oracle path reached y = 0 before x = 0");
  integral += x_end / std::sqrt(w);
  p.w_at_origin = (regime == Regime::ricci) ? w + 9.0 * epsilon * std::pow(x_end, 2.0 / 3.0) : w;
  p.half_volume = integral;
  p.alpha = integral / kPi2;
  return p;
}

OracleAlpha alpha_oracle(double epsilon) {
  require_epsilon(epsilon, true);
  OracleAlpha out;
  out.epsilon = epsilon;
  const double lo = std::min(z_lower(epsilon), kGaussBonnetBound);
  const auto sup = sup_over([&](double z) { return oracle_path(epsilon, z).alpha; }, lo, kGaussBonnetBound);
  out.alpha = sup.value;
  out.z_argmax = sup.arg;
  out.local_maxima = sup.local_maxima;
  out.multimodal = sup.local_maxima > 1;
  out.switch_x = oracle_path(epsilon, sup.arg).switch_x;
  return out;
}

double as_written_y(double epsilon, double z) {
  return std::pow(z, 0.5 * (kGaussBonnetBound - epsilon)) / (2.0 * (1.0 - epsilon));
}

namespace {

// Integral of (C - k x^{2/3})^{-1/2} from a to b (k > 0). The radicand
// decreases in x, so the admissible part is [lo, min(hi, root)].
AsWrittenTerm as_written_term(double C, double k, double a, double b) {
  AsWrittenTerm t;
  t.reversed = b < a;
  t.lower = std::min(a, b);
  t.upper = std::max(a, b);
  if (!(t.upper > t.lower)) return t;
  const double root = C > 0.0 ? std::pow(C / k, 1.5) : 0.0;
  const double top = std::min(t.upper, root);
  if (!(top > t.lower)) {
    t.violation = 1.0;
    return t;
  }
  t.violation = (t.upper - top) / (t.upper - t.lower);
  // x = top - len v^2. The radicand is written as k (root - x) g(x) with
  // g = (p + q)/(p^2 + p q + q^2), p = root^{1/3}, q = x^{1/3}, so no
  // cancellation occurs next to the root.
  const double len = top - t.lower;
  const double gap = root - top;
  const double p = std::cbrt(root);
  auto f = [&](double v) {
    const double d = gap + len * v * v;
    const double q = std::cbrt(top - len * v * v);
    const double g = (p + q) / (p * p + p * q + q * q);
    return 2.0 * len * v / std::sqrt(k * d * g);
  };
  const double v = quad::integrate(f, 0.0, 1.0, 1e-10);
  t.value = t.reversed ? -v : v;
  return t;
}

}  // namespace

AsWrittenPoint as_written_point(double epsilon, double z) {
  require_epsilon(epsilon, true);
  AsWrittenPoint pt;
  pt.z = z;
  pt.y = epsilon < 1.0 ? as_written_y(epsilon, z) : std::numeric_limits<double>::infinity();
  if (!std::isfinite(pt.y)) {
    pt.finite = false;
    pt.alpha = kNaN;
    return pt;
  }
  const double C1 = k36Pi - 27.0 * (1.0 - epsilon) * std::pow(pt.y, 2.0 / 3.0);
  const double C2 = k36Pi - 18.0 * (1.0 - epsilon) / std::cbrt(pt.y);
  pt.first = as_written_term(C1, 9.0 * epsilon, 0.0, pt.y);
  pt.second = as_written_term(C2, 9.0, pt.y, std::pow(z, 1.5));
  pt.alpha = (pt.first.value + pt.second.value) / kPi2;
  pt.finite = std::isfinite(pt.alpha);
  return pt;
}

AsWrittenAlpha alpha_as_written(double epsilon) {
  require_epsilon(epsilon, true);
  AsWrittenAlpha out;
  out.epsilon = epsilon;
  out.alpha = kNaN;
  if (epsilon >= 1.0) {
    out.degenerate = true;
    out.notes.push_back("y(z) divides by 2(1 - eps) = 0");
    return out;
  }
  const double lo = z_lower(epsilon);
  const double hi = kGaussBonnetBound;
  std::mutex notes_mutex;
  auto record = [&](const AsWrittenPoint& pt) {
    std::lock_guard lock(notes_mutex);
    ++out.points;
    if (!pt.finite) {
      out.degenerate = true;
      return;
    }
    const double v = std::max(pt.first.violation, pt.second.violation);
    if (v > 0.0) ++out.violating_points;
    out.max_violation = std::max(out.max_violation, v);
    if (pt.first.reversed || pt.second.reversed) out.orientation_reversed = true;
  };
  const auto sup = sup_over(
      [&](double z) {
        const AsWrittenPoint pt = as_written_point(epsilon, z);
        record(pt);
        return pt.alpha;
      },
      lo, hi);
  if (std::isfinite(sup.value)) {
    out.alpha = sup.value;
    out.z_argmax = sup.arg;
  } else {
    out.degenerate = true;
  }
  if (out.degenerate) out.notes.push_back("y(z) overflows or the formula has no finite value");
  if (out.orientation_reversed) out.notes.push_back("y(z) exceeds z^{3/2}: second integral runs backwards");
  if (out.violating_points > 0) {
    out.notes.push_back("negative radicand on part of the range at " + std::to_string(out.violating_points) + " of " +
                        std::to_string(out.points) + " z values");
  }
  return out;
}

AlphaResult evaluate_alpha(double epsilon) {
  AlphaResult r;
  r.epsilon = epsilon;
  r.oracle = alpha_oracle(epsilon);
  r.as_written = alpha_as_written(epsilon);
  r.alpha_oracle = r.oracle.alpha;
  r.alpha_as_written = r.as_written.alpha;
  r.z_argmax = r.oracle.z_argmax;
  r.discrepancy = std::fabs(r.alpha_as_written - r.alpha_oracle);
  return r;
}

std::vector<AlphaResult> evaluate_alpha_grid(const std::vector<double>& epsilons, unsigned threads) {
  std::vector<AlphaResult> out(epsilons.size());
  parallel_for(epsilons.size(), threads, [&](std::size_t i) { out[i] = evaluate_alpha(epsilons[i]); });
  return out;
}

Epsilon0Result epsilon0(Method method, double tol, unsigned threads) {
  if (!(tol > 0.0)) throw Error(ErrorKind::domain, "bisection tolerance must be positive");
  Epsilon0Result res;
  res.method = method;
  auto alpha = [&](double eps) {
    return method == Method::oracle ? alpha_oracle(eps).alpha : alpha_as_written(eps).alpha;
  };
  auto above = [](double a) { return std::isfinite(a) && a > 1.0 + 1e-9; };

  constexpr int kScan = 16;
  res.scan_epsilon.resize(kScan - 1);
  res.scan_alpha.resize(kScan - 1);
  for (int k = 1; k < kScan; ++k) res.scan_epsilon[k - 1] = static_cast<double>(k) / kScan;
  parallel_for(res.scan_epsilon.size(), threads,
               [&](std::size_t i) { res.scan_alpha[i] = alpha(res.scan_epsilon[i]); });

  std::size_t cross = 0;
  for (std::size_t i = 1; i < res.scan_alpha.size(); ++i) {
    if (above(res.scan_alpha[i - 1]) != above(res.scan_alpha[i])) {
      cross = i;
      break;
    }
  }
  if (cross == 0) {
    res.found = false;
    res.message = "alpha never crosses 1 on the eps scan";
    return res;
  }
  double lo = res.scan_epsilon[cross - 1];
  double hi = res.scan_epsilon[cross];
  const bool lo_above = above(res.scan_alpha[cross - 1]);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ++res.iterations;
    if (above(alpha(mid)) == lo_above) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.found = true;
  res.lo = lo;
  res.hi = hi;
  return res;
}

std::vector<CylinderRow> cylinder_growth(const std::vector<double>& lengths, double radius) {
  std::vector<CylinderRow> rows;
  rows.reserve(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0) || (i > 0 && !(lengths[i] > lengths[i - 1]))) {
      throw Error(ErrorKind::validation, "cylinder lengths must be positive and increasing");
    }
    const WarpedMetric m = WarpedMetric::cylinder(3, radius, lengths[i]);
    const CurvatureBounds b = curvature_bounds(m);
    CylinderRow row;
    row.length = lengths[i];
    row.volume = total_volume(m);
    row.ric_inf = b.min_ricci;
    row.scalar_inf = b.min_scalar;
    row.ricci_hypothesis_violated = !(b.min_ricci > 0.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace iso::football
