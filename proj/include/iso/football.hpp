#pragma once

// Volume bounds for 3-manifolds with R >= R0 and Ric >= eps Ric0 g, in the
// normalization of the unit round S^3 (R0 = 6, Ric0 = 2, V0 = 2 pi^2).
//
// Two comparison inequalities bound the profile A(V):
//   Ricci:  A'' <= -(A'^2/2 + eps Ric0) / A
//   scalar: A'' <= 4 pi / A^2 - (3 A'^2 / 4 + R0 / 2) / A
// In the phase plane x = F = A^{3/2}, y = F' they read
//   F'' <= -3 eps x^{-1/3}                  (Ricci)
//   F'' <= (36 pi - y^2)/(6x) - 9/2 x^{-1/3} (scalar)

#include <string>
#include <vector>

#include "iso/constants.hpp"

namespace iso::football {

inline constexpr int kSphereEulerCharacteristic = 2;
/// Gauss-Bonnet: the total curvature of a surface is 2 pi chi <= 4 pi.
inline constexpr double kGaussBonnetBound = 2.0 * kPi * kSphereEulerCharacteristic;

struct FootballSpec {
  double epsilon = 1.0;
  double R0 = 6.0;
  double Ric0 = 2.0;
  double V0 = 2.0 * kPi * kPi;
};

double scalar_odi_rhs(double A, double A_prime, double R0);
double ricci_odi_rhs(double A, double A_prime, double epsilon, double Ric0);

/// F'' bound obtained from an A'' bound via F = A^{3/2}:
/// F'' = (3/2) sqrt(A) A'' + (3/4) A'^2 / sqrt(A).
double f_second_from_area(double A, double A_prime, double A_second);

/// Phase-plane forms of the two bounds at (x, w = y^2), unit normalization.
double ricci_phase_rhs(double x, double epsilon);
double scalar_phase_rhs(double x, double w);

enum class Regime { ricci, scalar };

const char* to_string(Regime r) noexcept;

struct OracleSample {
  double x = 0.0;
  double w = 0.0;  // y^2
  Regime regime = Regime::scalar;
};

/// Extremal path ending at area z with y = 0, integrated backwards towards
/// x = 0 under whichever bound is tighter at each state.
struct OraclePath {
  double epsilon = 0.0;
  double z = 0.0;
  double x0 = 0.0;
  /// Integral of dx / y over the path: half the bounded volume.
  double half_volume = 0.0;
  double alpha = 0.0;
  Regime initial_regime = Regime::scalar;
  /// x where the active bound changes, in the order met (decreasing x).
  std::vector<double> switch_x;
  /// y^2 where the path reaches x = 0 (extrapolated from the last step).
  double w_at_origin = 0.0;
  std::vector<OracleSample> samples;
};

OraclePath oracle_path(double epsilon, double z, int steps = 2048, bool keep_samples = false);

/// Lower end of the admissible terminal-area range 4 pi / (3 - 2 eps).
double z_lower(double epsilon);

struct OracleAlpha {
  double epsilon = 0.0;
  double alpha = 0.0;
  double z_argmax = 0.0;
  int local_maxima = 0;
  bool multimodal = false;
  std::vector<double> switch_x;  // switches on the maximizing path
};

OracleAlpha alpha_oracle(double epsilon);

struct AsWrittenTerm {
  double lower = 0.0;
  double upper = 0.0;
  bool reversed = false;
  /// Fraction of [lower, upper] where the radicand is negative.
  double violation = 0.0;
  double value = 0.0;  // integral over the admissible part, signed by orientation
};

struct AsWrittenPoint {
  double z = 0.0;
  double y = 0.0;
  AsWrittenTerm first;
  AsWrittenTerm second;
  double alpha = 0.0;
  bool finite = true;
};

struct AsWrittenAlpha {
  double epsilon = 0.0;
  double alpha = 0.0;  // NaN when the formula is degenerate
  double z_argmax = 0.0;
  bool degenerate = false;
  bool orientation_reversed = false;
  double max_violation = 0.0;
  int violating_points = 0;
  int points = 0;
  std::vector<std::string> notes;
};

/// The displayed y(z) = z^{(4 pi - eps)/2} / (2 (1 - eps)).
double as_written_y(double epsilon, double z);

AsWrittenPoint as_written_point(double epsilon, double z);
AsWrittenAlpha alpha_as_written(double epsilon);

struct AlphaResult {
  double epsilon = 0.0;
  double alpha_oracle = 0.0;
  double alpha_as_written = 0.0;
  double z_argmax = 0.0;
  double discrepancy = 0.0;
  OracleAlpha oracle;
  AsWrittenAlpha as_written;
};

AlphaResult evaluate_alpha(double epsilon);

/// Evaluates each epsilon independently on up to `threads` workers.
std::vector<AlphaResult> evaluate_alpha_grid(const std::vector<double>& epsilons, unsigned threads);

enum class Method { oracle, as_written };

const char* to_string(Method m) noexcept;

struct Epsilon0Result {
  Method method = Method::oracle;
  bool found = false;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  std::vector<double> scan_epsilon;
  std::vector<double> scan_alpha;
  std::string message;
};

/// Scans eps = k/16 for the first place where alpha leaves 1 from above,
/// then bisects until the bracket is no wider than tol.
Epsilon0Result epsilon0(Method method, double tol = 5e-4, unsigned threads = 1);

struct CylinderRow {
  double length = 0.0;
  double volume = 0.0;
  double ric_inf = 0.0;
  double scalar_inf = 0.0;
  /// Ric >= eps Ric0 fails for every eps > 0.
  bool ricci_hypothesis_violated = false;
};

std::vector<CylinderRow> cylinder_growth(const std::vector<double>& lengths, double radius = 1.0);

}  // namespace iso::football
