#include "iso/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "iso/error.hpp"

namespace iso::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : "command line: "; }

[[noreturn]] void fail(int line, const std::string& msg) { throw Error(ErrorKind::config, where(line) + msg); }

const std::set<std::string> kModelKeys = {"model", "n", "radius", "c", "length", "t_values", "f_values", "t_max"};

std::set<std::string> allowed_keys(const std::string& command) {
  std::set<std::string> keys = {"command", "output", "format"};
  auto add = [&](std::initializer_list<const char*> ks) {
    for (const char* k : ks) keys.insert(k);
  };
  auto add_model = [&] { keys.insert(kModelKeys.begin(), kModelKeys.end()); };
  if (command == "profile") {
    add_model();
    add({"grid"});
  } else if (command == "variation-check") {
    add_model();
    add({"t", "h", "levels"});
  } else if (command == "mass") {
    add_model();
    add({"grid", "ric0"});
  } else if (command == "bishop-bound") {
    add({"n", "ric0", "m0", "samples"});
  } else if (command == "football-alpha") {
    add({"eps_grid"});
  } else if (command == "epsilon0") {
    add({"method", "tol"});
  } else if (command == "monotonicity") {
    add({"case", "lambda", "m", "cone_angle", "rho_min", "rho_max", "rho_count"});
  } else if (command == "cutoff-budget") {
    add({"n", "radii", "delta", "C0", "C", "H"});
  } else if (command == "cylinder-growth") {
    add({"lengths", "radius"});
  }
  return keys;
}

std::vector<std::string> required_keys(const std::string& command) {
  if (command == "profile" || command == "variation-check") return {"model", "n"};
  if (command == "mass") return {"model", "n", "ric0"};
  if (command == "bishop-bound") return {"n", "ric0"};
  if (command == "football-alpha") return {"eps_grid"};
  if (command == "monotonicity") return {"case", "lambda"};
  if (command == "cutoff-budget") return {"n", "radii", "delta"};
  if (command == "cylinder-growth") return {"lengths"};
  return {};
}

std::string joined_commands() {
  std::string s;
  for (const auto& c : command_names()) s += (s.empty() ? "" : ", ") + c;
  return s;
}

void check_command(const std::string& command, int line) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    fail(line, "unknown command '" + command + "'; valid commands: " + joined_commands());
  }
}

int line_of(const RunConfig& c, const std::string& key) {
  const auto it = c.entries().find(key);
  return it == c.entries().end() ? 0 : it->second.line;
}

void check_choice(const RunConfig& c, const std::string& key, std::initializer_list<const char*> choices) {
  if (!c.has(key)) return;
  const std::string v = c.text(key);
  for (const char* ch : choices) {
    if (v == ch) return;
  }
  std::string list;
  for (const char* ch : choices) list += (list.empty() ? "" : "|") + std::string(ch);
  fail(line_of(c, key), key + " must be one of " + list + ", got '" + v + "'");
}

void check_positive(const RunConfig& c, const std::string& key) {
  if (c.has(key) && !(c.number(key) > 0.0)) fail(line_of(c, key), key + " must be positive");
}

}  // namespace

double parse_number(const std::string& text, const std::string& key, int line) {
  const std::string t = trim(text);
  if (t.empty()) fail(line, "missing value for '" + key + "'");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    fail(line, "malformed number '" + t + "' for '" + key + "'");
  }
  return v;
}

void RunConfig::set(const std::string& key, std::string value, int line) {
  entries_[key] = Entry{std::move(value), line};
}

std::string RunConfig::text(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(0, "missing required key '" + key + "'");
  return it->second.value;
}

std::string RunConfig::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double RunConfig::number(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(0, "missing required key '" + key + "'");
  return parse_number(it->second.value, key, it->second.line);
}

double RunConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int RunConfig::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::fabs(v) > 1e9) fail(line_of(*this, key), key + " must be an integer");
  return static_cast<int>(v);
}

int RunConfig::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(0, "missing required key '" + key + "'");
  std::vector<double> out;
  std::stringstream ss(it->second.value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key, it->second.line));
  if (out.empty()) fail(it->second.line, "'" + key + "' needs at least one value");
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& command) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  std::map<std::string, int> seen;
  std::vector<std::pair<std::string, int>> order;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (seen.count(key)) fail(line, "duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
    seen[key] = line;
    if (value.empty()) fail(line, "missing value for '" + key + "'");
    cfg.set(key, value, line);
  }

  if (cfg.has("command")) {
    const Entry& e = cfg.entries().at("command");
    check_command(e.value, e.line);
    if (!command.empty() && command != e.value) {
      fail(e.line, "config names command '" + e.value + "' but '" + command + "' was requested");
    }
    cfg.command = e.value;
  } else if (!command.empty()) {
    cfg.command = command;
  } else {
    fail(0, "missing required key 'command'");
  }
  check_command(cfg.command, 0);

  const auto allowed = allowed_keys(cfg.command);
  for (const auto& [key, entry] : cfg.entries()) {
    if (!allowed.count(key)) fail(entry.line, "unknown key '" + key + "' for command " + cfg.command);
  }
  cfg.out_path = cfg.text_or("output", "");
  cfg.format = cfg.text_or("format", "");
  return cfg;
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value, const std::string& flag) {
  if (value.empty()) return;
  if (!allowed_keys(config.command).count(key)) fail(0, flag + " does not apply to command " + config.command);
  config.set(key, value);
}

void validate(const RunConfig& c) {
  check_choice(c, "format", {"csv", "json"});
  check_choice(c, "model", {"sphere", "football", "cylinder", "tabulated"});
  check_choice(c, "method", {"oracle", "as-written"});
  check_choice(c, "case", {"sphere", "circle", "cone"});

  const int n_min = c.command == "cutoff-budget" ? 8 : 3;
  if (c.has("n")) {
    const int n = c.integer("n");
    if (n < n_min) {
      fail(line_of(c, "n"), "n = " + std::to_string(n) + " is below the minimum " + std::to_string(n_min));
    }
  }
  for (const char* key : {"radius", "length", "ric0", "tol", "delta", "t_max", "h"}) check_positive(c, key);
  if (c.has("c")) {
    const double v = c.number("c");
    if (!(v > 0.0 && v <= 1.0)) fail(line_of(c, "c"), "c must lie in (0, 1]");
  }
  if (c.has("m0") && c.number("m0") < 0.0) fail(line_of(c, "m0"), "m0 must be nonnegative");
  for (const char* key : {"C0", "C"}) {
    if (c.has(key) && c.number(key) < 0.0) fail(line_of(c, key), std::string(key) + " must be nonnegative");
  }
  if (c.has("H")) c.number("H");
  if (c.has("lambda")) c.number("lambda");
  if (c.has("t")) c.number("t");
  if (c.has("grid") && c.integer("grid") < 16) fail(line_of(c, "grid"), "grid must be at least 16");
  if (c.has("levels") && c.integer("levels") < 2) fail(line_of(c, "levels"), "levels must be at least 2");
  if (c.has("samples") && c.integer("samples") < 2) fail(line_of(c, "samples"), "samples must be at least 2");
  if (c.has("rho_count") && c.integer("rho_count") < 2) fail(line_of(c, "rho_count"), "rho_count must be at least 2");
  if (c.has("m") && c.integer("m") < 1) fail(line_of(c, "m"), "m must be at least 1");
  for (const char* key : {"rho_min", "rho_max", "cone_angle"}) check_positive(c, key);
  if (c.has("rho_min") && c.has("rho_max") && !(c.number("rho_max") > c.number("rho_min"))) {
    fail(line_of(c, "rho_max"), "rho_max must exceed rho_min");
  }
  for (const char* key : {"radii", "lengths", "t_values", "f_values"}) {
    if (c.has(key)) c.numbers(key);
  }
  if (c.has("eps_grid")) {
    const std::string g = c.text("eps_grid");
    const int line = line_of(c, "eps_grid");
    const auto p1 = g.find(':');
    const auto p2 = p1 == std::string::npos ? p1 : g.find(':', p1 + 1);
    if (p2 == std::string::npos) fail(line, "eps_grid must look like lo:hi:n");
    const double lo = parse_number(g.substr(0, p1), "eps_grid", line);
    const double hi = parse_number(g.substr(p1 + 1, p2 - p1 - 1), "eps_grid", line);
    const double n = parse_number(g.substr(p2 + 1), "eps_grid", line);
    if (!(lo > 0.0) || hi > 1.0 || hi < lo) fail(line, "eps_grid needs 0 < lo <= hi <= 1");
    if (n != std::floor(n) || n < 1 || n > 100000 || (n == 1 && hi != lo)) {
      fail(line, "eps_grid count must be a positive integer (1 only when lo = hi)");
    }
  }
  if (c.has("model") && c.text("model") == "tabulated") {
    for (const char* key : {"t_values", "f_values", "t_max"}) {
      if (!c.has(key)) fail(0, std::string("tabulated model needs '") + key + "'");
    }
  }
  for (const auto& key : required_keys(c.command)) {
    if (!c.has(key)) fail(0, "missing required key '" + key + "' for command " + c.command);
  }
}

}  // namespace iso::cli
