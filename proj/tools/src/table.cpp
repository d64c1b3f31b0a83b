#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "raysplit/errors.hpp"
#include "raysplit_cli/cli.hpp"

namespace raysplit::cli {

namespace {

std::string csv_field(const nlohmann::json& value) {
  if (value.is_number_integer() || value.is_number_unsigned()) return value.dump();
  if (value.is_number_float()) return format_number(value.get<double>());
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_null()) return "";
  const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.15g", x);
  return buffer;
}

std::string csv_text(const Table& table) {
  std::string text = "schema_version";
  for (const auto& c : table.columns) text += "," + c;
  text += '\n';
  const std::string version = std::to_string(kSchemaVersion);
  for (const auto& row : table.rows) {
    text += version;
    for (const auto& value : row) text += "," + csv_field(value);
    text += '\n';
  }
  return text;
}

std::string json_text(const Table& table) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["table"] = table.name;
  doc["columns"] = table.columns;
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& value = row[i];
      record[table.columns[i]] = value.is_number_float() ? nlohmann::json(round15(value.get<double>())) : value;
    }
    records.push_back(std::move(record));
  }
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

Format resolve_format(const std::string& requested, const std::string& path) {
  if (requested == "csv") return Format::kCsv;
  if (requested == "json") return Format::kJson;
  if (!requested.empty()) throw ValidationError("format", "must be csv or json");
  const bool json_suffix = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json_suffix ? Format::kJson : Format::kCsv;
}

void write_text(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path, "cannot open for writing");
  file << text;
  if (!file) throw IoError(path, "write failed");
}

void write_table(const Table& table, const std::string& path, Format format, std::ostream& fallback) {
  write_text(format == Format::kJson ? json_text(table) : csv_text(table), path, fallback);
}

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError(path, "cannot open for reading");
  std::string line;
  if (!std::getline(file, line)) throw ValidationError("roots", path + " is empty");
  const auto header = split_csv_line(line);
  std::size_t index = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) index = i;
  }
  if (index == header.size()) throw ValidationError("roots", path + " has no column '" + column + "'");
  std::vector<double> values;
  std::size_t line_number = 1;
  while (std::getline(file, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= index) {
      throw ValidationError("roots", path + ":" + std::to_string(line_number) + " is missing column " + column);
    }
    char* end = nullptr;
    const double v = std::strtod(fields[index].c_str(), &end);
    if (end == fields[index].c_str() || *end != '\0') {
      throw ValidationError("roots", path + ":" + std::to_string(line_number) + " is not a number");
    }
    values.push_back(v);
  }
  return values;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError(path, "cannot open for reading");
  try {
    return nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config", path + ": " + e.what());
  }
}

}  // namespace raysplit::cli
