#include "iso/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace iso::cli {

namespace {

Json normalized(const Json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = normalized(*it);
    return out;
  }
  return j;
}

std::string csv_cell(const Json& j) {
  if (j.is_null()) return "nan";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  if (j.is_number_float()) return format_number(j.get<double>());
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_array()) {
    for (const auto& e : j) s += (s.empty() ? "" : ";") + csv_cell(e);
  } else {
    s = j.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

Json parameters(const RunConfig& config) {
  Json p = Json::object();
  for (const auto& [key, entry] : config.entries()) {
    if (key == "command" || key == "output" || key == "format") continue;
    p[key] = entry.value;
  }
  return p;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) return;
  out.emplace_back(prefix, j);
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  if (v == 0.0) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render_csv(const CommandResult& result, const RunConfig& config, const std::string& version) {
  std::ostringstream os;
  os << "# command: " << config.command << "\n";
  os << "# version: iso-compare " << version << "\n";
  const Json params = parameters(config);
  for (const auto& [key, value] : params.items()) {
    os << "# param " << key << " = " << value.get<std::string>() << "\n";
  }
  std::vector<std::pair<std::string, Json>> flat;
  flatten(normalized(result.summary), "", flat);
  if (result.table) {
    for (const auto& [key, value] : flat) os << "# " << key << " = " << csv_cell(value) << "\n";
    const Table& t = *result.table;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(normalized(row[i]));
      os << "\n";
    }
  } else {
    for (std::size_t i = 0; i < flat.size(); ++i) os << (i ? "," : "") << flat[i].first;
    os << "\n";
    for (std::size_t i = 0; i < flat.size(); ++i) os << (i ? "," : "") << csv_cell(flat[i].second);
    os << "\n";
  }
  return os.str();
}

namespace {

// Same layout as Json::dump(2) but floats go through format_number, so JSON
// digits match the CSV exactly. Non-finite values become null.
void write_json(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      write_json(it.value(), depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_json(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    out += std::isfinite(v) ? format_number(v) : "null";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string render_json(const CommandResult& result, const RunConfig& config, const std::string& version) {
  Json doc = Json::object();
  doc["_meta"] = {{"command", config.command}, {"version", version}, {"parameters", parameters(config)}};
  for (auto it = result.summary.begin(); it != result.summary.end(); ++it) doc[it.key()] = normalized(it.value());
  if (result.table) {
    Json rows = Json::array();
    for (const auto& row : result.table->rows) {
      Json r = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) r[result.table->columns[i]] = normalized(row[i]);
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
  }
  std::string out;
  write_json(doc, 0, out);
  return out + "\n";
}

}  // namespace iso::cli
