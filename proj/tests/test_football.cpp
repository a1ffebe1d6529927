#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "iso/constants.hpp"
#include "iso/error.hpp"
#include "iso/football.hpp"

using namespace iso;
using namespace iso::football;

namespace {

// Closed-form extremal for terminal area z: the Ricci branch on [0, s] and
// the scalar branch on [s, z^{3/2}] in w = y^2, glued where the two bounds
// agree. Integrated with tanh-sinh, which handles the endpoint singularity.
struct ClosedForm {
  double s = 0.0;
  double alpha = 0.0;
};

ClosedForm closed_form(double eps, double z) {
  const double r = std::sqrt(z);
  const double s = r * (kGaussBonnetBound - z) / (2.0 * (1.0 - eps));
  auto ricci = [&](double x) {
    return 1.0 / std::sqrt(36.0 * kPi - 27.0 * (1.0 - eps) * std::cbrt(s * s) - 9.0 * eps * std::cbrt(x * x));
  };
  // Scalar branch in u = x^{1/3}: the radicand is 9 (r - u)(u^2 + r u + r^2 - 4 pi) / u.
  auto scalar = [&](double u, double uc) {
    const double gap = u > 0.5 * (std::cbrt(s) + r) ? uc : r - u;
    return 3.0 * u * u / std::sqrt(9.0 * gap * (u * u + r * u + r * r - kGaussBonnetBound) / u);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  ClosedForm out;
  out.s = s;
  const double half = ts.integrate(ricci, 0.0, s) + ts.integrate(scalar, std::cbrt(s), r);
  out.alpha = half / (kPi * kPi);
  return out;
}

}  // namespace

TEST_CASE("comparison inequalities at the equator") {
  CHECK(scalar_odi_rhs(4.0 * kPi, 0.0, 6.0) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-15));
  CHECK(scalar_odi_rhs(4.0 * kPi, 0.0, 0.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-15));
  CHECK(ricci_odi_rhs(4.0 * kPi, 0.0, 1.0, 2.0) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-15));
  CHECK(ricci_odi_rhs(4.0 * kPi, 0.0, 0.5, 2.0) == doctest::Approx(-1.0 / (4.0 * kPi)).epsilon(1e-15));
  CHECK(ricci_odi_rhs(1.0, 2.0, 1.0, 2.0) == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(scalar_odi_rhs(1e12, 0.0, 6.0) < 0.0);
  CHECK(scalar_odi_rhs(1e12, 0.0, 6.0) > -1e-11);
  CHECK_THROWS_AS(scalar_odi_rhs(0.0, 0.0, 6.0), Error);
  CHECK_THROWS_AS(ricci_odi_rhs(-1.0, 0.0, 1.0, 2.0), Error);
}

TEST_CASE("gauss-bonnet constant") {
  CHECK(kGaussBonnetBound == 2.0 * kPi * 2.0);
  CHECK(kSphereEulerCharacteristic == 2);
  const FootballSpec spec;
  CHECK(spec.V0 == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
}

TEST_CASE("phase forms agree with the area forms") {
  for (double A : {0.5, 2.0, 4.0 * kPi, 9.0}) {
    for (double Ap : {-3.0, 0.0, 1.5}) {
      const double x = std::pow(A, 1.5);
      const double y = 1.5 * std::sqrt(A) * Ap;
      CHECK(f_second_from_area(A, Ap, ricci_odi_rhs(A, Ap, 0.3, 2.0)) ==
            doctest::Approx(ricci_phase_rhs(x, 0.3)).epsilon(1e-12));
      CHECK(f_second_from_area(A, Ap, scalar_odi_rhs(A, Ap, 6.0)) ==
            doctest::Approx(scalar_phase_rhs(x, y * y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("oracle path matches the glued closed form") {
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    const double lo = z_lower(eps);
    for (double t : {0.1, 0.5, 0.9}) {
      const double z = lo + t * (kGaussBonnetBound - lo);
      const auto cf = closed_form(eps, z);
      const auto p = oracle_path(eps, z);
      CHECK(p.alpha == doctest::Approx(cf.alpha).epsilon(1e-8));
      REQUIRE(p.switch_x.size() == 1);
      CHECK(p.switch_x.front() == doctest::Approx(cf.s).epsilon(1e-8));
    }
  }
}

TEST_CASE("property: exactly one switch with the scalar bound active near the turning point") {
  for (int i = 1; i < 20; ++i) {
    const double eps = 0.05 * i;
    const double lo = z_lower(eps);
    for (double t : {0.05, 0.3, 0.7, 0.95}) {
      const double z = lo + t * (kGaussBonnetBound - lo);
      const auto p = oracle_path(eps, z, 2048, true);
      CHECK(p.initial_regime == Regime::scalar);
      REQUIRE(p.switch_x.size() == 1);
      int changes = 0;
      for (std::size_t k = 1; k < p.samples.size(); ++k) changes += p.samples[k].regime != p.samples[k - 1].regime;
      CHECK(changes == 1);
      CHECK(p.samples.back().regime == Regime::ricci);
    }
  }
}

TEST_CASE("sphere case reproduces the round phase path") {
  const auto p = oracle_path(1.0, kGaussBonnetBound, 2048, true);
  CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-9));
  double worst = 0.0;
  for (const auto& s : p.samples) {
    worst = std::max(worst, std::fabs(s.w - (36.0 * kPi - 9.0 * std::cbrt(s.x * s.x))));
  }
  CHECK(worst <= 1e-8 * 36.0 * kPi);
}

TEST_CASE("oracle alpha reference points") {
  CHECK(alpha_oracle(1.0).alpha == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(alpha_oracle(0.5).alpha == doctest::Approx(1.0).epsilon(1e-6));
  const auto small = alpha_oracle(0.05);
  CHECK(small.alpha > 1.0);
  // The round sphere at z = 4 pi is a second, lower local maximum.
  CHECK(small.local_maxima == 2);
  CHECK(small.z_argmax > z_lower(0.05));
  CHECK(small.z_argmax < kGaussBonnetBound);
  CHECK(alpha_oracle(0.1).alpha == doctest::Approx(1.13066917066).epsilon(1e-8));
}

TEST_CASE("property: oracle alpha is nonincreasing in eps and never below 1") {
  std::vector<double> eps(64);
  for (int i = 0; i < 64; ++i) eps[i] = (i + 1) / 64.0;
  const auto rows = evaluate_alpha_grid(eps, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].alpha_oracle >= 1.0 - 1e-9);
    if (i > 0) CHECK(rows[i].alpha_oracle <= rows[i - 1].alpha_oracle + 1e-9);
  }
}

TEST_CASE("epsilon0 bracket") {
  const auto r = epsilon0(Method::oracle, 5e-4, 0);
  REQUIRE(r.found);
  CHECK(r.hi - r.lo <= 5e-4);
  CHECK(r.lo > 0.10);
  CHECK(r.hi < 0.20);
  CHECK(r.hi <= 0.5);
  CHECK(r.lo < 0.135);
  CHECK(r.hi > 0.134);
  CHECK(r.iterations == 7);
  CHECK(r.scan_alpha.size() == 15);
}

TEST_CASE("as-written formula audit") {
  CHECK(as_written_y(0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(as_written_y(0.5, 4.0) == doctest::Approx(std::pow(4.0, 0.5 * (4.0 * kPi - 0.5))).epsilon(1e-14));

  const auto at_top = as_written_point(0.5, kGaussBonnetBound);
  CHECK(at_top.second.reversed);
  CHECK(at_top.first.violation > 0.0);

  const auto half = alpha_as_written(0.5);
  CHECK(half.orientation_reversed);
  CHECK(half.violating_points > 0);
  CHECK_FALSE(half.notes.empty());

  const auto one = alpha_as_written(1.0);
  CHECK(one.degenerate);
  CHECK(std::isnan(one.alpha));

  const auto r = evaluate_alpha(0.3);
  CHECK(std::isfinite(r.alpha_as_written));
  CHECK(r.discrepancy == doctest::Approx(std::fabs(r.alpha_as_written - r.alpha_oracle)).epsilon(1e-15));
  CHECK(r.discrepancy > 0.5);
}

TEST_CASE("cylinder growth") {
  const auto rows = cylinder_growth({10.0, 100.0, 1000.0});
  REQUIRE(rows.size() == 3);
  const double expect[] = {40.0 * kPi, 400.0 * kPi, 4000.0 * kPi};
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[i].volume == doctest::Approx(expect[i]).epsilon(1e-10));
    CHECK(rows[i].ric_inf == 0.0);
    CHECK(rows[i].ricci_hypothesis_violated);
  }
  CHECK_THROWS_AS(cylinder_growth({10.0, 5.0}), Error);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(alpha_oracle(0.0), Error);
  CHECK_THROWS_AS(alpha_oracle(1.5), Error);
  CHECK_THROWS_AS(oracle_path(0.5, 20.0), Error);
  CHECK_THROWS_AS(epsilon0(Method::oracle, 0.0), Error);
}
