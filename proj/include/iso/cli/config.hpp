#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iso::cli {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "profile",        "variation-check", "mass",          "bishop-bound",    "football-alpha",
      "epsilon0",       "monotonicity",    "cutoff-budget", "cylinder-growth",
  };
  return names;
}

struct Entry {
  std::string value;
  int line = 0;  // 0 for values supplied on the command line
};

/// Validated `key = value` configuration. Values stay as text; typed getters
/// parse on access and report the originating line on failure.
class RunConfig {
 public:
  std::string command;
  std::string out_path;  // empty: standard output
  std::string format;    // csv | json

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, std::string value, int line = 0);
  const std::map<std::string, Entry>& entries() const { return entries_; }

  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  std::vector<double> numbers(const std::string& key) const;

 private:
  std::map<std::string, Entry> entries_;
};

/// Parses configuration text. `command` may come from the file or be given
/// up front; a conflict between the two is an error.
RunConfig parse_config(const std::string& text, const std::string& command = "");

/// Sets a value given by a command-line flag; the key must be valid for the
/// configured command.
void apply_override(RunConfig& config, const std::string& key, const std::string& value, const std::string& flag);

/// Checks keys, required values and ranges for the command. Throws
/// Error(config) naming the key and line.
void validate(const RunConfig& config);

double parse_number(const std::string& text, const std::string& key, int line);

}  // namespace iso::cli
