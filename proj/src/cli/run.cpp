#include "iso/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iso/constants.hpp"
#include "iso/error.hpp"
#include "iso/football.hpp"
#include "iso/parallel.hpp"
#include "iso/phase_plane.hpp"
#include "iso/singular_gmt.hpp"
#include "iso/variation.hpp"
#include "iso/warped_geometry.hpp"

namespace iso::cli {

namespace {

constexpr double kAuditLo = 0.134;
constexpr double kAuditHi = 0.135;

WarpedMetric build_metric(const RunConfig& c) {
  const std::string model = c.text("model");
  const int n = c.integer("n");
  if (model == "sphere") return WarpedMetric::round_sphere(n, c.number_or("radius", 1.0));
  if (model == "football") return WarpedMetric::football(n, c.number_or("c", 1.0), c.number_or("radius", 1.0));
  if (model == "cylinder") return WarpedMetric::cylinder(n, c.number_or("radius", 1.0), c.number_or("length", 1.0));
  return WarpedMetric::tabulated(n, c.numbers("t_values"), c.numbers("f_values"), c.number("t_max"));
}

std::string default_format(const std::string& command) {
  return (command == "bishop-bound" || command == "epsilon0" || command == "cutoff-budget") ? "json" : "csv";
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

CommandResult cmd_profile(const RunConfig& c) {
  const WarpedMetric m = build_metric(c);
  const Profile p = candidate_profile(m, c.integer_or("grid", 257));
  const double e = static_cast<double>(p.n) / (p.n - 1);
  CommandResult r;
  r.summary["n"] = p.n;
  r.summary["closed"] = p.closed;
  r.summary["total_volume"] = p.total_volume;
  r.summary["samples"] = p.v_grid.size();
  Table t{{"t", "V", "A", "F", "dA_dV"}, {}};
  for (std::size_t i = 0; i < p.v_grid.size(); ++i) {
    t.rows.push_back({p.t_grid[i], p.v_grid[i], p.a_values[i], std::pow(p.a_values[i], e), p.a_prime[i]});
  }
  r.table = std::move(t);
  return r;
}

CommandResult cmd_variation(const RunConfig& c) {
  const WarpedMetric m = build_metric(c);
  const double t = c.number_or("t", m.t_max() / 3.0);
  const double h = c.number_or("h", default_step(m));
  const ConvergenceStudy s = convergence_study(m, t, h, c.integer_or("levels", 3));
  CommandResult r;
  r.summary["order_first"] = s.order_first;
  r.summary["order_H_dot"] = s.order_H_dot;
  r.summary["order_second"] = s.order_second;
  Table tab{{"t", "h", "residual_first", "residual_H_dot", "residual_second", "order_estimate"}, {}};
  for (const auto& lv : s.levels) {
    tab.rows.push_back({lv.t, lv.h, lv.residual_first, lv.residual_H_dot, lv.residual_second, lv.order_estimate});
  }
  r.table = std::move(tab);
  return r;
}

CommandResult cmd_mass(const RunConfig& c) {
  const WarpedMetric m = build_metric(c);
  const double ric0 = c.number("ric0");
  const Profile p = candidate_profile(m, c.integer_or("grid", 257));
  const FCurve f = to_F(p);
  const MassFunction mass = ricci_mass(p, ric0);
  const PhasePath path = extremal_path(p.n, ric0, 0.0);

  double max_abs = 0.0;
  std::size_t half_end = 0;
  for (std::size_t i = 0; i < mass.v_grid.size(); ++i) {
    max_abs = std::max(max_abs, std::fabs(mass.m_values[i]));
    if (mass.v_grid[i] <= 0.5 * p.total_volume) half_end = i + 1;
  }
  std::vector<double> half(mass.m_values.begin(), mass.m_values.begin() + half_end);
  std::size_t drops = 0;
  for (std::size_t i = 1; i < half.size(); ++i) {
    if (half[i] < half[i - 1] - 1e-6) ++drops;
  }

  CommandResult r;
  r.summary["y0"] = path.y0;
  r.summary["x0"] = path.x0;
  r.summary["bound"] = volume_from_path(path);
  r.summary["total_volume"] = p.total_volume;
  r.summary["mass_constant"] = mass.constant;
  r.summary["anchor"] = to_string(mass.anchor);
  r.summary["max_abs_m"] = max_abs;
  r.summary["nondecreasing_first_half"] = drops == 0;
  Table t{{"V", "A", "F", "F_prime", "m"}, {}};
  for (std::size_t i = 0; i < mass.v_grid.size(); ++i) {
    t.rows.push_back({mass.v_grid[i], p.a_values[i], f.F[i], f.F_prime[i], mass.m_values[i]});
  }
  r.table = std::move(t);
  return r;
}

CommandResult cmd_bishop(const RunConfig& c) {
  const int n = c.integer("n");
  const double ric0 = c.number("ric0");
  const PhasePath path = extremal_path(n, ric0, c.number_or("m0", 0.0), c.integer_or("samples", 257));
  CommandResult r;
  r.summary["bound"] = volume_from_path(path);
  r.summary["y0"] = path.y0;
  r.summary["x0"] = path.x0;
  r.summary["m0"] = path.m0;
  r.summary["sphere_volume"] = round_sphere_volume(n, std::sqrt((n - 1) / ric0));
  Table t{{"x", "y"}, {}};
  for (std::size_t i = 0; i < path.x.size(); ++i) t.rows.push_back({path.x[i], path.y[i]});
  r.table = std::move(t);
  return r;
}

std::vector<double> eps_grid(const std::string& spec) {
  const auto p1 = spec.find(':');
  const auto p2 = spec.find(':', p1 + 1);
  const double lo = parse_number(spec.substr(0, p1), "eps_grid", 0);
  const double hi = parse_number(spec.substr(p1 + 1, p2 - p1 - 1), "eps_grid", 0);
  const int n = static_cast<int>(parse_number(spec.substr(p2 + 1), "eps_grid", 0));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = (n == 1) ? lo : (i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return out;
}

CommandResult cmd_football_alpha(const RunConfig& c) {
  const auto results = football::evaluate_alpha_grid(eps_grid(c.text("eps_grid")), thread_limit());
  CommandResult r;
  r.summary["normalization"] = {{"R0", 6.0}, {"Ric0", 2.0}, {"V0", 2.0 * kPi * kPi}};
  Table t{{"epsilon", "alpha_oracle", "alpha_as_written", "z_argmax", "discrepancy", "oracle_switches",
           "oracle_local_maxima", "as_written_z_argmax", "as_written_degenerate", "as_written_reversed",
           "as_written_max_violation", "as_written_violating_points"},
          {}};
  for (const auto& a : results) {
    t.rows.push_back({a.epsilon, a.alpha_oracle, a.alpha_as_written, a.z_argmax, a.discrepancy,
                      static_cast<int>(a.oracle.switch_x.size()), a.oracle.local_maxima, a.as_written.z_argmax,
                      a.as_written.degenerate, a.as_written.orientation_reversed, a.as_written.max_violation,
                      a.as_written.violating_points});
  }
  r.table = std::move(t);
  return r;
}

CommandResult cmd_epsilon0(const RunConfig& c) {
  const football::Method method =
      c.text_or("method", "oracle") == "oracle" ? football::Method::oracle : football::Method::as_written;
  const auto res = football::epsilon0(method, c.number_or("tol", 5e-4), thread_limit());
  const bool overlaps = res.found && res.lo < kAuditHi && res.hi > kAuditLo;

  CommandResult r;
  r.summary["method"] = football::to_string(method);
  r.summary["found"] = res.found;
  if (res.found) {
    r.summary["lo"] = res.lo;
    r.summary["hi"] = res.hi;
  } else {
    r.summary["lo"] = nullptr;
    r.summary["hi"] = nullptr;
  }
  r.summary["iterations"] = res.iterations;
  r.summary["width"] = res.found ? res.hi - res.lo : std::nan("");
  r.summary["audit_interval"] = {kAuditLo, kAuditHi};
  r.summary["overlaps_audit_interval"] = overlaps;
  if (!res.message.empty()) r.summary["message"] = res.message;

  const bool diagnose = !overlaps || method == football::Method::as_written;
  Table t{{"epsilon", "alpha"}, {}};
  if (diagnose) {
    if (method == football::Method::oracle) {
      t.columns.insert(t.columns.end(), {"z_argmax", "switch_x"});
    } else {
      t.columns.insert(t.columns.end(), {"z_argmax", "degenerate", "reversed", "max_violation", "notes"});
    }
  }
  for (std::size_t i = 0; i < res.scan_epsilon.size(); ++i) {
    std::vector<Json> row = {res.scan_epsilon[i], res.scan_alpha[i]};
    if (diagnose && method == football::Method::oracle) {
      const auto o = football::alpha_oracle(res.scan_epsilon[i]);
      row.push_back(o.z_argmax);
      row.push_back(number_array(o.switch_x));
    } else if (diagnose) {
      const auto a = football::alpha_as_written(res.scan_epsilon[i]);
      row.push_back(a.z_argmax);
      row.push_back(a.degenerate);
      row.push_back(a.orientation_reversed);
      row.push_back(a.max_violation);
      std::string notes;
      for (const auto& n : a.notes) notes += (notes.empty() ? "" : "; ") + n;
      row.push_back(notes);
    }
    t.rows.push_back(std::move(row));
  }
  r.table = std::move(t);
  return r;
}

CommandResult cmd_monotonicity(const RunConfig& c) {
  gmt::MonotonicityCase mc;
  const std::string name = c.text("case");
  mc.surface = name == "sphere" ? gmt::Surface::sphere : name == "circle" ? gmt::Surface::circle : gmt::Surface::cone;
  mc.lambda = c.number("lambda");
  mc.m = c.integer_or("m", 2);
  mc.cone_angle = c.number_or("cone_angle", 0.25 * kPi);
  const double lo = c.number_or("rho_min", 0.01);
  const double hi = c.number_or("rho_max", 2.0);
  const int count = c.integer_or("rho_count", 200);
  for (int i = 0; i < count; ++i) mc.rho_grid.push_back(i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1));

  const auto samples = gmt::monotonicity_profile(mc);
  std::vector<double> values;
  bool clamped = false;
  for (const auto& s : samples) {
    values.push_back(s.profile);
    clamped = clamped || s.clamped;
  }
  const auto bad = gmt::check_monotone(values);
  CommandResult r;
  r.summary["case"] = name;
  r.summary["dimension"] = gmt::surface_dimension(mc);
  r.summary["lambda"] = mc.lambda;
  r.summary["nominal_sup_H"] = gmt::nominal_sup_H(mc.surface);
  r.summary["monotone"] = bad.empty();
  r.summary["violations"] = bad.size();
  r.summary["clamped"] = clamped;
  Table t{{"rho", "mass", "profile", "clamped"}, {}};
  for (const auto& s : samples) t.rows.push_back({s.rho, s.mass, s.profile, s.clamped});
  r.table = std::move(t);
  return r;
}

CommandResult cmd_cutoff(const RunConfig& c) {
  gmt::RadiusFamily f;
  f.n = c.integer("n");
  f.radii = c.numbers("radii");
  f.delta = c.number("delta");
  f.C0 = c.number_or("C0", 1.0);
  f.C = c.number_or("C", 1.0);
  f.H = c.number_or("H", 0.0);
  const auto b = gmt::cutoff_budget(f);
  CommandResult r;
  r.summary["terms"] = {{"area_term", b.area_term},
                        {"doubled_area_term", b.doubled_area_term},
                        {"dirichlet_term", b.dirichlet_term}};
  r.summary["bounds"] = {{"area_bound", b.area_bound},
                         {"C1", b.C1},
                         {"dirichlet_bound", b.dirichlet_bound},
                         {"sum_r_n7", b.sum_r_n7}};
  r.summary["area_ok"] = b.area_ok;
  r.summary["dirichlet_ok"] = b.dirichlet_ok;
  r.summary["admissible"] = b.admissible;
  r.summary["violations"] = b.violations;
  return r;
}

CommandResult cmd_cylinder(const RunConfig& c) {
  const auto rows = football::cylinder_growth(c.numbers("lengths"), c.number_or("radius", 1.0));
  CommandResult r;
  r.summary["n"] = 3;
  Table t{{"length", "volume", "ric_inf", "scalar_inf", "ricci_hypothesis_violated"}, {}};
  for (const auto& row : rows) {
    t.rows.push_back({row.length, row.volume, row.ric_inf, row.scalar_inf, row.ricci_hypothesis_violated});
  }
  r.table = std::move(t);
  return r;
}

}  // namespace

const char* version() { return ISO_COMPARE_VERSION; }

CommandResult execute(const RunConfig& c) {
  validate(c);
  const std::string& cmd = c.command;
  if (cmd == "profile") return cmd_profile(c);
  if (cmd == "variation-check") return cmd_variation(c);
  if (cmd == "mass") return cmd_mass(c);
  if (cmd == "bishop-bound") return cmd_bishop(c);
  if (cmd == "football-alpha") return cmd_football_alpha(c);
  if (cmd == "epsilon0") return cmd_epsilon0(c);
  if (cmd == "monotonicity") return cmd_monotonicity(c);
  if (cmd == "cutoff-budget") return cmd_cutoff(c);
  if (cmd == "cylinder-growth") return cmd_cylinder(c);
  throw Error(ErrorKind::config, "unknown command '" + cmd + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const CommandResult result = execute(config);
    const std::string format = config.format.empty() ? default_format(config.command) : config.format;
    const std::string text =
        format == "json" ? render_json(result, config, version()) : render_csv(result, config, version());
    if (config.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(config.out_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::config, "cannot open output file '" + config.out_path + "'");
      f << text;
      if (!f) throw Error(ErrorKind::config, "failed writing '" + config.out_path + "'");
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "iso-compare: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitNumerical;
  } catch (const std::exception& e) {
    err << "iso-compare: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric-profile comparison toolkit"};
  app.set_version_flag("--version", std::string("iso-compare ") + version());
  std::string command, config_path, out_path, format, eps, method, case_name, lambda;
  std::string commands;
  for (const auto& c : command_names()) commands += (commands.empty() ? "" : "|") + c;
  app.add_option("command", command, commands)->required();
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--eps-grid", eps, "football-alpha: lo:hi:n");
  app.add_option("--method", method, "epsilon0: oracle or as-written");
  app.add_option("--case", case_name, "monotonicity: sphere, circle or cone");
  app.add_option("--lambda", lambda, "monotonicity: mean-curvature bound");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw Error(ErrorKind::config, "cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config(buf.str(), command);
    apply_override(cfg, "eps_grid", eps, "--eps-grid");
    apply_override(cfg, "method", method, "--method");
    apply_override(cfg, "case", case_name, "--case");
    apply_override(cfg, "lambda", lambda, "--lambda");
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) cfg.format = format;
    return run(cfg, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "iso-compare: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace iso::cli
