#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iso/cli/config.hpp"

namespace iso::cli {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct CommandResult {
  Json summary = Json::object();
  std::optional<Table> table;
};

/// Rounds to 12 significant digits so JSON shows exactly what CSV prints.
double round12(double v);

/// %.12g; non-finite values print as nan, inf, -inf.
std::string format_number(double v);

std::string render_csv(const CommandResult& result, const RunConfig& config, const std::string& version);
std::string render_json(const CommandResult& result, const RunConfig& config, const std::string& version);

}  // namespace iso::cli
