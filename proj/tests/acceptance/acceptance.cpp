// Acceptance run: one PASS/FAIL line per criterion with the measured values,
// tolerances and wall time. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iso/constants.hpp"
#include "iso/error.hpp"
#include "iso/football.hpp"
#include "iso/parallel.hpp"
#include "iso/phase_plane.hpp"
#include "iso/singular_gmt.hpp"
#include "iso/variation.hpp"
#include "iso/warped_geometry.hpp"

using namespace iso;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> extra;  // printed under the verdict line

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " !" << what;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    v.pass = false;
    v.detail << " !runtime over " << limit_s << " s";
  }
  if (!v.pass) ++failures;
  std::printf("[%s] %s %s |%s | %.3f s (limit %g s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.str().c_str(),
              secs, limit_s);
  for (const auto& line : v.extra) std::printf("       %s\n", line.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

int main() {
  const unsigned threads = thread_limit();

  criterion("AC1", "Bishop sharpness", 3.0, [](Verdict& v) {
    struct Case {
      int n;
      double ric0;
      double expect;
    };
    const Case cases[] = {{3, 2.0, 2.0 * kPi * kPi}, {4, 3.0, 8.0 * kPi * kPi / 3.0}, {3, 8.0, kPi * kPi / 4.0}};
    for (const auto& c : cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const double b = bishop_bound(c.n, c.ric0);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const double rel = std::fabs(b - c.expect) / c.expect;
      v.detail << " n=" << c.n << ",Ric0=" << c.ric0 << ": " << fmt("%.12g", b) << " rel " << fmt("%.1e", rel);
      v.require(rel <= 1e-6, "rel > 1e-6");
      v.require(secs < 1.0, "single case over 1 s");
    }
    v.detail << " (tol 1e-6 rel, < 1 s each)";
  });

  criterion("AC2", "Zero mass on the unit 3-sphere", 1.0, [](Verdict& v) {
    const auto p = candidate_profile(WarpedMetric::round_sphere(3, 1.0), 257);
    const auto m = ricci_mass(p, 2.0);
    double worst = 0.0;
    for (double x : m.m_values) worst = std::max(worst, std::fabs(x));
    v.detail << " max|m(V)| = " << fmt("%.3e", worst) << " over " << m.m_values.size() << " samples (tol 1e-6)";
    v.require(worst <= 1e-6, "mass too large");
  });

  criterion("AC3", "Variation formulas", 5.0, [](Verdict& v) {
    const std::vector<std::pair<std::string, WarpedMetric>> models = {
        {"sphere", WarpedMetric::round_sphere(3, 1.0)},
        {"football c=0.7", WarpedMetric::football(3, 0.7, 1.0)},
        {"football c=0.9", WarpedMetric::football(3, 0.9, 1.0)}};
    double min_order = 1e300;
    double equator_first = 0.0;
    for (const auto& [name, m] : models) {
      for (double frac : {0.2, 0.4, 0.7, 0.85}) {
        const auto st = convergence_study(m, frac * m.t_max(), 1e-2, 3);
        min_order = std::min({min_order, st.order_first, st.order_H_dot, st.order_second});
      }
      // dA/dt vanishes at the symmetric slice, where the centered stencil is exact.
      for (const auto& lvl : convergence_study(m, 0.5 * m.t_max(), 1e-2, 3).levels) {
        equator_first = std::max(equator_first, lvl.residual_first);
      }
    }
    v.detail << " min observed order " << fmt("%.4f", min_order) << " (need >= 1.9, h = 1e-2, 5e-3, 2.5e-3)"
             << "; first-variation residual at the symmetric slice " << fmt("%.1e", equator_first);
    v.require(min_order >= 1.9, "order below 1.9");
    v.require(equator_first <= 1e-12, "symmetric-slice residual above roundoff");
    const auto eq = check_second_variation(WarpedMetric::round_sphere(3, 1.0), 0.5 * kPi, 1e-3);
    const double err = std::fabs(eq.second_fd + 1.0 / (2.0 * kPi));
    v.detail << "; equator A'' = " << fmt("%.10f", eq.second_fd) << " vs -1/(2 pi), err " << fmt("%.1e", err)
             << " (tol 1e-5)";
    v.require(err <= 1e-5, "second variation off");
  });

  criterion("AC4", "Bishop inequality on admissible models", 2.0, [](Verdict& v) {
    const double bound = bishop_bound(3, 2.0);
    const std::vector<std::pair<std::string, WarpedMetric>> models = {
        {"football c=0.7", WarpedMetric::football(3, 0.7, 1.0)},
        {"football c=0.9", WarpedMetric::football(3, 0.9, 1.0)},
        {"sphere r=1", WarpedMetric::round_sphere(3, 1.0)},
        {"sphere r=0.9", WarpedMetric::round_sphere(3, 0.9)},
        {"sphere r=0.5", WarpedMetric::round_sphere(3, 0.5)}};
    for (const auto& [name, m] : models) {
      const auto cb = curvature_bounds(m);
      const bool certified = cb.conclusive && cb.min_ricci >= 2.0 - 1e-9;
      const double vol = total_volume(m);
      v.detail << " " << name << ": vol " << fmt("%.10g", vol) << (certified ? "" : " (uncertified)");
      v.require(certified, name + " not certified Ric >= 2");
      v.require(vol <= bound + 1e-9, name + " exceeds bound");
    }
    v.detail << "; bound " << fmt("%.10g", bound) << " + 1e-9";
  });

  criterion("AC5", "Football constant", 60.0, [threads](Verdict& v) {
    const auto r = football::epsilon0(football::Method::oracle, 5e-4, threads);
    v.require(r.found, "no bracket: " + r.message);
    const double width = r.hi - r.lo;
    v.detail << " bracket [" << fmt("%.6f", r.lo) << ", " << fmt("%.6f", r.hi) << "] width " << fmt("%.2e", width)
             << " after " << r.iterations << " bisections (need width <= 5e-4 inside (0.10, 0.20))";
    v.require(width <= 5e-4, "bracket too wide");
    v.require(r.lo > 0.10 && r.hi < 0.20, "bracket outside (0.10, 0.20)");
    const bool overlaps = r.lo < 0.135 && r.hi > 0.134;
    v.detail << "; overlaps (0.134, 0.135): " << (overlaps ? "yes" : "NO");
    v.require(overlaps, "misses (0.134, 0.135)");
    const double a_half = football::alpha_oracle(0.5).alpha;
    const double a_one = football::alpha_oracle(1.0).alpha;
    v.detail << "; alpha(0.5) = " << fmt("%.10f", a_half) << ", alpha(1) = " << fmt("%.10f", a_one) << " (tol 1e-6)";
    v.require(std::fabs(a_half - 1.0) <= 1e-6, "alpha(0.5) != 1");
    v.require(std::fabs(a_one - 1.0) <= 1e-6, "alpha(1) != 1");
    if (!overlaps) {
      std::vector<double> eps(64);
      for (int i = 0; i < 64; ++i) eps[i] = (i + 1) / 64.0;
      const auto rows = football::evaluate_alpha_grid(eps, threads);
      v.extra.push_back("audit: eps, alpha_oracle, z_argmax, switch_x on the maximizing path");
      for (const auto& row : rows) {
        std::ostringstream line;
        line << fmt("%.6f", row.epsilon) << ", " << fmt("%.12g", row.alpha_oracle) << ", "
             << fmt("%.12g", row.z_argmax) << ",";
        for (double s : row.oracle.switch_x) line << " " << fmt("%.12g", s);
        v.extra.push_back(line.str());
      }
    }
  });

  criterion("AC6", "As-written alpha audit", 30.0, [](Verdict& v) {
    for (double eps : {0.1, 0.3, 0.5}) {
      const auto r = football::evaluate_alpha(eps);
      std::ostringstream line;
      line << "eps " << eps << ": oracle " << fmt("%.10g", r.alpha_oracle) << ", as-written "
           << fmt("%.10g", r.alpha_as_written) << ", discrepancy " << fmt("%.10g", r.discrepancy)
           << ", violating z points " << r.as_written.violating_points << "/" << r.as_written.points
           << ", max violated fraction " << fmt("%.3g", r.as_written.max_violation)
           << (r.as_written.orientation_reversed ? ", orientation reversed" : "")
           << (r.as_written.degenerate ? ", degenerate" : "");
      for (const auto& note : r.as_written.notes) line << "; " << note;
      v.extra.push_back(line.str());
      v.require(std::isfinite(r.alpha_oracle), "oracle not finite");
      const bool reported = std::isfinite(r.alpha_as_written) || r.as_written.degenerate;
      v.require(reported, "as-written neither finite nor flagged");
      const bool violations_logged = r.as_written.violating_points == 0 || !r.as_written.notes.empty();
      v.require(violations_logged, "violations not logged");
    }
    v.detail << " discrepancies and domain violations reported for eps in {0.1, 0.3, 0.5}";
  });

  criterion("AC7", "Monotonicity suite", 1.0, [](Verdict& v) {
    std::vector<double> rho(200);
    for (int i = 0; i < 200; ++i) rho[i] = 0.01 + (2.0 - 0.01) * i / 199.0;
    auto violations = [&](gmt::Surface s, double lambda) {
      gmt::MonotonicityCase c;
      c.surface = s;
      c.lambda = lambda;
      c.rho_grid = rho;
      std::vector<double> values;
      for (const auto& x : gmt::monotonicity_profile(c)) values.push_back(x.profile);
      return gmt::check_monotone(values).size();
    };
    for (auto s : {gmt::Surface::circle, gmt::Surface::sphere, gmt::Surface::cone}) {
      const double exact = gmt::nominal_sup_H(s);
      const auto a = violations(s, exact);
      const auto b = violations(s, exact + 1.0);
      v.detail << " " << gmt::to_string(s) << ": " << a << "/" << b << " violations";
      v.require(a == 0 && b == 0, std::string(gmt::to_string(s)) + " not monotone");
    }
    const auto neg = violations(gmt::Surface::circle, -10.0);
    v.detail << "; negative control (circle, lambda = -10): " << neg << " violations (need >= 1)";
    v.require(neg >= 1, "negative control undetected");
  });

  criterion("AC8", "Cutoff budgets", 2.0, [](Verdict& v) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> dim(8, 12), count(1, 64);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int ok = 0;
    int exact_scaling = 0;
    double worst_area = 0.0, worst_dir = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      gmt::RadiusFamily f;
      f.n = dim(rng);
      f.delta = 0.001 + 0.999 * unit(rng);
      f.C0 = 2.0 * unit(rng);
      f.C = 0.1 + 3.0 * unit(rng);
      f.H = 2.0 * unit(rng);
      const int k = count(rng);
      double s7 = 0.0;
      for (int i = 0; i < k; ++i) {
        f.radii.push_back(f.delta * (0.001 + 0.999 * unit(rng)));
        s7 += std::pow(f.radii.back(), f.n - 7);
      }
      if (s7 > 1.0) {
        const double shrink = std::pow(1.0 / s7, 1.0 / (f.n - 7)) * 0.999;
        for (double& r : f.radii) r *= shrink;
      }
      const auto b = gmt::cutoff_budget(f);
      const double dbl = std::ldexp(1.0, f.n - 1);
      const double C1 = dbl * f.C * (f.H * f.H + f.C0 * f.C0);
      const bool area = b.area_term <= f.C * dbl * std::pow(f.delta, 6);
      const bool dir = b.dirichlet_term <= C1 * std::pow(f.delta, 4) * (1.0 + 1e-12);
      worst_area = std::max(worst_area, b.area_term / (f.C * dbl * std::pow(f.delta, 6)));
      worst_dir = std::max(worst_dir, b.dirichlet_term / (C1 * std::pow(f.delta, 4)));
      if (b.admissible && area && dir && b.C1 == C1) ++ok;

      gmt::RadiusFamily g = f;
      g.delta *= 2.0;
      for (double& r : g.radii) r *= 2.0;
      const auto c = gmt::cutoff_budget(g);
      if (c.area_bound == 64.0 * b.area_bound && c.dirichlet_bound == 16.0 * b.dirichlet_bound) ++exact_scaling;
    }
    v.detail << " " << ok << "/1000 families within both budgets (worst ratios " << fmt("%.3g", worst_area) << ", "
             << fmt("%.3g", worst_dir) << "); doubling delta scaled bounds by exactly 2^6 and 2^4 in " << exact_scaling
             << "/1000";
    v.require(ok == 1000, "budget violated");
    v.require(exact_scaling == 1000, "scaling not exact");
  });

  criterion("AC9", "Cylinder counterexample", 1.0, [](Verdict& v) {
    const auto rows = football::cylinder_growth({10.0, 100.0, 1000.0});
    for (const auto& r : rows) {
      const double expect = 4.0 * kPi * r.length;
      const double rel = std::fabs(r.volume - expect) / expect;
      v.detail << " N=" << r.length << ": vol " << fmt("%.10g", r.volume) << " (4 pi N, rel " << fmt("%.1e", rel)
               << "), Ric_inf " << fmt("%g", r.ric_inf + 0.0);
      v.require(rel <= 1e-12, "volume off");
      v.require(r.ric_inf == 0.0, "Ric_inf not 0");
    }
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
