#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iso/cli/config.hpp"
#include "iso/cli/output.hpp"
#include "iso/cli/run.hpp"
#include "iso/constants.hpp"
#include "iso/error.hpp"

using namespace iso;
using namespace iso::cli;

namespace {

std::string config_error(const std::string& text, const std::string& command = "") {
  try {
    validate(parse_config(text, command));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    return e.what();
  }
  return "";
}

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_text(const std::string& text) {
  Outcome o;
  std::ostringstream out, err;
  o.code = run(parse_config(text), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("iso_compare_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int call_main(std::vector<std::string> args) {
  args.insert(args.begin(), "iso-compare");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return iso::cli::main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("parse_config accepts the basic form") {
  const auto c = parse_config("command = bishop-bound\nn = 3\nric0 = 2");
  CHECK(c.command == "bishop-bound");
  CHECK(c.integer("n") == 3);
  CHECK(c.number("ric0") == 2.0);
  CHECK_NOTHROW(validate(c));

  const auto d = parse_config("# comment line\n\n  n = 4   # trailing\nric0=3\n", "bishop-bound");
  CHECK(d.command == "bishop-bound");
  CHECK(d.integer("n") == 4);
}

TEST_CASE("configuration errors name the line") {
  const auto low = config_error("command = bishop-bound\nn = 2");
  CHECK(low.find("line 2") != std::string::npos);
  CHECK(low.find("below the minimum 3") != std::string::npos);

  const auto unknown = config_error("command = flya");
  CHECK(unknown.find("line 1") != std::string::npos);
  CHECK(unknown.find("unknown command 'flya'") != std::string::npos);
  for (const auto& name : command_names()) CHECK(unknown.find(name) != std::string::npos);

  const auto bad_number = config_error("command = bishop-bound\nn = 3\nric0 = 2x");
  CHECK(bad_number.find("line 3") != std::string::npos);
  CHECK(bad_number.find("malformed number") != std::string::npos);

  const auto bad_key = config_error("command = bishop-bound\nn = 3\nric0 = 2\nradius = 1");
  CHECK(bad_key.find("line 4") != std::string::npos);
  CHECK(bad_key.find("'radius'") != std::string::npos);

  const auto missing = config_error("command = bishop-bound\nn = 3");
  CHECK(missing.find("missing required key 'ric0'") != std::string::npos);

  const auto dup = config_error("command = bishop-bound\nn = 3\nn = 4\nric0 = 2");
  CHECK(dup.find("line 3") != std::string::npos);

  const auto no_eq = config_error("command = bishop-bound\nn 3");
  CHECK(no_eq.find("line 2") != std::string::npos);

  const auto conflict = config_error("command = mass\n", "bishop-bound");
  CHECK(conflict.find("line 1") != std::string::npos);

  CHECK(config_error("command = football-alpha\neps_grid = 0.5:0.1:4").find("eps_grid") != std::string::npos);
  CHECK(config_error("command = epsilon0\nmethod = guess").find("method") != std::string::npos);
  CHECK(config_error("command = epsilon0\ntol = -1").find("tol") != std::string::npos);
  CHECK(config_error("command = cutoff-budget\nn = 7\nradii = 0.1\ndelta = 0.1").find("minimum 8") !=
        std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(kPi) == "3.14159265359");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(round12(kPi) == 3.14159265359);
}

TEST_CASE("bishop-bound json") {
  auto o = run_text("command = bishop-bound\nn = 3\nric0 = 2\nformat = json");
  REQUIRE(o.code == kExitOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["bound"].get<double>() == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-11));
  CHECK(j["y0"].get<double>() == doctest::Approx(10.6347).epsilon(1e-5));
  CHECK(j["x0"].get<double>() == doctest::Approx(std::pow(4.0 * kPi, 1.5)).epsilon(1e-11));
  CHECK(j["_meta"]["command"] == "bishop-bound");
  CHECK(j["_meta"]["version"] == version());
  CHECK(j["_meta"]["parameters"]["ric0"] == "2");
  CHECK(j["rows"].is_array());
}

TEST_CASE("csv carries a header naming command, parameters and version") {
  auto o = run_text("command = monotonicity\ncase = sphere\nlambda = 1\nformat = csv");
  REQUIRE(o.code == kExitOk);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# command: monotonicity");
  std::getline(in, line);
  CHECK(line == std::string("# version: iso-compare ") + version());
  while (std::getline(in, line) && line.rfind("#", 0) == 0) {
  }
  CHECK(line == "rho,mass,profile,clamped");
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = line.find(',', b + 1);
    const double profile = std::stod(line.substr(b + 1, c - b - 1));
    CHECK(profile >= prev);
    prev = profile;
    ++rows;
  }
  CHECK(rows == 200);
}

TEST_CASE("exit codes") {
  CHECK(run_text("command = bishop-bound\nn = 2\nric0 = 2").code == kExitValidation);
  CHECK(run_text("command = cylinder-growth\nlengths = 10, 5").code == kExitValidation);
  const auto numerical = run_text(
      "command = mass\nmodel = tabulated\nn = 3\nt_values = 0.5, 1, 1.5, 2, 2.5\n"
      "f_values = 0.48, 0.84, 0.99, 0.91, 0.6\nt_max = 3.14159265\nric0 = 2\ngrid = 16");
  CHECK(numerical.code == kExitNumerical);
  CHECK(numerical.err.find("resolution error") != std::string::npos);
  CHECK(numerical.out.empty());
}

TEST_CASE("every command runs") {
  const std::vector<std::string> configs = {
      "command = profile\nmodel = football\nn = 3\nc = 0.9\ngrid = 33",
      "command = variation-check\nmodel = sphere\nn = 3",
      "command = mass\nmodel = sphere\nn = 3\nric0 = 2\ngrid = 65",
      "command = bishop-bound\nn = 4\nric0 = 3",
      "command = football-alpha\neps_grid = 0.1:0.5:3",
      "command = epsilon0\nmethod = as-written",
      "command = monotonicity\ncase = cone\nlambda = 0\ncone_angle = 0.4",
      "command = cutoff-budget\nn = 9\nradii = 0.01, 0.02\ndelta = 0.02",
      "command = cylinder-growth\nlengths = 10, 100",
  };
  for (const auto& text : configs) {
    for (const char* format : {"csv", "json"}) {
      const auto o = run_text(text + "\nformat = " + format);
      CHECK_MESSAGE(o.code == kExitOk, text << " -> " << o.err);
      if (std::string(format) == "json") CHECK_NOTHROW(nlohmann::json::parse(o.out));
    }
  }
}

TEST_CASE("football-alpha csv columns") {
  const auto o = run_text("command = football-alpha\neps_grid = 0.3:0.3:1\nformat = csv");
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.find("\nepsilon,alpha_oracle,alpha_as_written,z_argmax,discrepancy") != std::string::npos);
}

TEST_CASE("determinism: identical config gives identical bytes") {
  const std::string text = "command = football-alpha\neps_grid = 0.05:0.25:5\nformat = json";
  const auto a = run_text(text);
  const auto b = run_text(text);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);

  const std::string cfg = temp_path("det.conf");
  const std::string out1 = temp_path("det1.csv");
  const std::string out2 = temp_path("det2.csv");
  {
    std::ofstream f(cfg);
    f << "command = mass\nmodel = football\nn = 3\nc = 0.8\nric0 = 1.28\ngrid = 65\n";
  }
  CHECK(call_main({"mass", "--config", cfg, "--out", out1, "--format", "csv"}) == kExitOk);
  CHECK(call_main({"mass", "--config", cfg, "--out", out2, "--format", "csv"}) == kExitOk);
  const std::string s1 = slurp(out1);
  CHECK_FALSE(s1.empty());
  CHECK(s1 == slurp(out2));
  CHECK(s1.rfind("# command: mass", 0) == 0);
  std::remove(cfg.c_str());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("command-line overrides") {
  const std::string cfg = temp_path("mono.conf");
  const std::string out = temp_path("mono.csv");
  {
    std::ofstream f(cfg);
    f << "case = sphere\nlambda = 1\n";
  }
  CHECK(call_main({"monotonicity", "--config", cfg, "--out", out, "--case", "circle", "--lambda", "-10"}) ==
        kExitOk);
  const std::string text = slurp(out);
  CHECK(text.find("# case = circle") != std::string::npos);
  CHECK(text.find("# monotone = false") != std::string::npos);
  CHECK(call_main({"bishop-bound", "--config", cfg, "--eps-grid", "0.1:0.2:2"}) == kExitValidation);
  CHECK(call_main({"bishop-bound", "--config", temp_path("does-not-exist.conf")}) == kExitValidation);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}
