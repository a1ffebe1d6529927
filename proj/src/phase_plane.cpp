#include "iso/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iso/constants.hpp"
#include "iso/error.hpp"
#include "iso/interpolation.hpp"
#include "iso/quadrature.hpp"
#include "iso/simd/kernels.hpp"

namespace iso {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_dimension(int n) {
  if (n < 3) throw Error(ErrorKind::validation, "dimension n must be at least 3, got " + std::to_string(n));
}

double curvature_coefficient(int n, double ric0) { return n * n * ric0 / (n - 1.0); }

bool any_finite(const std::vector<double>& v) {
  return std::any_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

const char* to_string(MassAnchor anchor) noexcept {
  switch (anchor) {
    case MassAnchor::slice_derivative: return "slice_derivative";
    case MassAnchor::exact_pole_slope: return "exact_pole_slope";
    case MassAnchor::fitted: return "fitted";
  }
  return "unknown";
}

double phase_start_height(int n) {
  require_dimension(n);
  return n * std::pow(unit_sphere_measure(n - 1), 1.0 / (n - 1));
}

double fitted_start_slope(const std::vector<double>& v, const std::vector<double>& F, int n) {
  const double v0 = v.front();
  const double cutoff = v0 + 0.1 * (v.back() - v0);
  const double p = 1.0 + 2.0 / n;
  // Normal equations for F - F(v0) = a s + b s^p, s = V - v0.
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  int count = 0;
  for (std::size_t i = 1; i < v.size() && v[i] <= cutoff; ++i) {
    const double s = v[i] - v0;
    const double b1 = s;
    const double b2 = std::pow(s, p);
    const double rhs = F[i] - F.front();
    s11 += b1 * b1;
    s12 += b1 * b2;
    s22 += b2 * b2;
    r1 += b1 * rhs;
    r2 += b2 * rhs;
    ++count;
  }
  if (count < 4) {
    throw Error(ErrorKind::resolution, "only " + std::to_string(count) +
                                           " samples in the first volume decade; need 4 to anchor m(0)");
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(std::fabs(det) > 0.0)) throw Error(ErrorKind::resolution, "degenerate small-volume fit");
  return (r1 * s22 - r2 * s12) / det;
}

FCurve to_F(const Profile& profile) {
  const int n = profile.n;
  require_dimension(n);
  const std::size_t N = profile.v_grid.size();
  if (N < 3 || profile.a_values.size() != N) throw Error(ErrorKind::validation, "profile arrays malformed");
  for (std::size_t i = 1; i + 1 < N; ++i) {
    if (!(profile.a_values[i] > 0.0)) {
      throw Error(ErrorKind::validation, "nonpositive area at interior sample " + std::to_string(i));
    }
  }

  FCurve c;
  c.n = n;
  c.v = profile.v_grid;
  c.F.resize(N);
  c.F_prime.assign(N, kNaN);
  const double e = static_cast<double>(n) / (n - 1);
  for (std::size_t i = 0; i < N; ++i) c.F[i] = std::pow(std::max(profile.a_values[i], 0.0), e);

  if (profile.a_prime.size() == N && any_finite(profile.a_prime)) {
    // dF/dV = (n/(n-1)) A^{1/(n-1)} dA/dV
    for (std::size_t i = 0; i < N; ++i) {
      if (std::isfinite(profile.a_prime[i]) && profile.a_values[i] > 0.0) {
        c.F_prime[i] = e * std::pow(profile.a_values[i], 1.0 / (n - 1)) * profile.a_prime[i];
      }
    }
  } else {
    simd::centered_difference(c.v, c.F, c.F_prime);
    if (profile.closed) c.F_prime.front() = c.F_prime.back() = kNaN;
  }

  if (!std::isfinite(c.F_prime.front())) {
    if (profile.start_F_slope) {
      c.F_prime.front() = *profile.start_F_slope;
    } else {
      try {
        c.F_prime.front() = fitted_start_slope(c.v, c.F, n);
      } catch (const Error&) {
      }
    }
  }
  if (!std::isfinite(c.F_prime.back())) {
    if (profile.end_F_slope) {
      c.F_prime.back() = *profile.end_F_slope;
    } else {
      std::vector<double> rv(N), rF(N);
      for (std::size_t i = 0; i < N; ++i) {
        rv[i] = profile.total_volume - c.v[N - 1 - i];
        rF[i] = c.F[N - 1 - i];
      }
      try {
        c.F_prime.back() = -fitted_start_slope(rv, rF, n);
      } catch (const Error&) {
      }
    }
  }
  return c;
}

MassFunction ricci_mass(const Profile& profile, double ric0) {
  if (!(ric0 > 0.0)) throw Error(ErrorKind::domain, "Ric0 must be positive");
  const int n = profile.n;
  const FCurve c = to_F(profile);

  MassFunction m;
  m.v_grid = c.v;
  m.constant = std::pow(phase_start_height(n), 2);
  m.anchor = MassAnchor::slice_derivative;
  if (profile.a_prime.empty() || !std::isfinite(profile.a_prime.front())) {
    if (profile.start_F_slope) {
      m.anchor = MassAnchor::exact_pole_slope;
    } else {
      m.anchor = MassAnchor::fitted;
      fitted_start_slope(c.v, c.F, n);  // surfaces the resolution error
    }
  }
  m.anchor_slope = c.F_prime.front();

  const double k = curvature_coefficient(n, ric0);
  m.m_values.resize(c.v.size());
  for (std::size_t i = 0; i < c.v.size(); ++i) {
    m.m_values[i] = m.constant - c.F_prime[i] * c.F_prime[i] - k * std::pow(c.F[i], 2.0 / n);
  }
  return m;
}

PhasePath extremal_path(int n, double ric0, double m0, int samples) {
  require_dimension(n);
  if (!(ric0 > 0.0)) throw Error(ErrorKind::domain, "Ric0 must be positive");
  if (!(m0 >= 0.0)) throw Error(ErrorKind::domain, "mass constant m0 must be nonnegative");
  if (samples < 2) throw Error(ErrorKind::domain, "extremal path needs at least 2 samples");
  const double y0 = phase_start_height(n);
  const double c2 = y0 * y0 - m0;
  if (!(c2 > 0.0)) {
    throw Error(ErrorKind::empty_path, "m0 >= y0^2 leaves no admissible phase path");
  }
  const double k = curvature_coefficient(n, ric0);

  PhasePath p;
  p.n = n;
  p.ric0 = ric0;
  p.m0 = m0;
  p.y0 = std::sqrt(c2);
  p.x0 = std::pow(c2 / k, n / 2.0);
  p.closed_form = true;
  p.x.resize(samples);
  p.y.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double theta = 0.5 * kPi * i / (samples - 1);
    const double s = std::sin(theta);
    p.x[i] = p.x0 * std::pow(s, n);
    p.y[i] = std::sqrt(std::max(0.0, c2 - k * std::pow(p.x[i], 2.0 / n)));
  }
  p.x.front() = 0.0;
  p.y.front() = p.y0;
  p.x.back() = p.x0;
  p.y.back() = 0.0;
  return p;
}

PhasePath sampled_path(int n, std::vector<double> x, std::vector<double> y) {
  require_dimension(n);
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(ErrorKind::validation, "sampled path needs matching x/y arrays with at least 3 samples");
  }
  PhasePath p;
  p.n = n;
  p.x0 = x.back();
  p.y0 = y.front();
  p.x = std::move(x);
  p.y = std::move(y);
  return p;
}

double volume_from_path(const PhasePath& path) {
  if (path.x.size() < 2 || path.x.size() != path.y.size()) {
    throw Error(ErrorKind::empty_path, "phase path has no samples");
  }
  if (path.closed_form) {
    const int n = path.n;
    const double c2 = path.y0 * path.y0;
    const double k = curvature_coefficient(n, path.ric0);
    // x = x0 sin^n(theta) with x0 = (c2/k)^{n/2}: the radicand c2 - k x^{2/n}
    // becomes c2 cos^2 and cancels against dx = n x0 sin^{n-1} cos d(theta).
    const double x0 = std::pow(c2 / k, 0.5 * n);
    auto g = [&](double theta) { return n * x0 * std::pow(std::sin(theta), n - 1) / path.y0; };
    return 2.0 * quad::integrate(g, 0.0, 0.5 * kPi, 1e-12);
  }

  const std::size_t N = path.x.size();
  const double scale = std::fabs(path.y.front());
  if (!(path.x.front() == 0.0) || !(scale > 0.0)) {
    throw Error(ErrorKind::quadrature_failure, "sampled path must start at x = 0 with y > 0");
  }
  if (!(std::fabs(path.y.back()) <= 1e-12 * scale)) {
    throw Error(ErrorKind::quadrature_failure,
                "sampled path does not end on y = 0; the endpoint singularity cannot be regularized");
  }
  std::vector<double> w(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (i + 1 < N && !(path.y[i] > 0.0)) {
      throw Error(ErrorKind::quadrature_failure, "sampled path touches y = 0 before its last sample");
    }
    if (i > 0 && !(path.x[i] > path.x[i - 1])) {
      throw Error(ErrorKind::quadrature_failure, "sampled path x is not strictly increasing");
    }
    w[i] = path.y[i] * path.y[i];
  }
  w.back() = 0.0;
  // w = y^2 is smooth with a simple zero at x0, so 1/sqrt(w) has the
  // inverse-square-root endpoint the substitution removes.
  const MonotoneCubic wi(path.x, w);
  const double x0 = path.x.back();
  auto inv = [&](double x) {
    const double v = wi(x);
    if (!(v > 0.0)) {
      throw Error(ErrorKind::quadrature_failure, "interpolated y^2 nonpositive at x = " + std::to_string(x));
    }
    return 1.0 / std::sqrt(v);
  };
  const double split = path.x[N - 2];
  // The interpolant is only C^1 at the knots, so integrate knot to knot.
  double body = 0.0;
  for (std::size_t i = 0; i + 2 < N; ++i) {
    const double a = path.x[i];
    const double h = path.x[i + 1] - a;
    body += h * quad::integrate([&](double t) { return inv(a + h * t); }, 0.0, 1.0, 1e-10);
  }
  // Last interval: w = (x0 - x) q(x) with q taken linear through the
  // quotients at the two preceding samples, which keeps the simple zero.
  const double xa = path.x[N - 3];
  const double qa = w[N - 3] / (x0 - xa);
  const double qb = w[N - 2] / (x0 - split);
  if (!(qa > 0.0) || !(qb > 0.0)) {
    throw Error(ErrorKind::quadrature_failure, "sampled path does not approach y = 0 with a simple zero of y^2");
  }
  // x = x0 - len v^2 turns dx / sqrt((x0 - x) q) into 2 sqrt(len) / sqrt(q) dv.
  const double len = x0 - split;
  auto tail = [&](double v) {
    const double q = qb - (qb - qa) * len * v * v / (split - xa);
    return 2.0 * std::sqrt(len / q);
  };
  const double last = quad::integrate(tail, 0.0, 1.0, 1e-10);
  return 2.0 * (body + last);
}

double bishop_bound(int n, double ric0) {
  require_dimension(n);
  if (!(ric0 > 0.0)) throw Error(ErrorKind::domain, "Ric0 must be positive");
  return volume_from_path(extremal_path(n, ric0, 0.0));
}

}  // namespace iso
