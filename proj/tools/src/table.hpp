#pragma once
// Tabular output shared by the subcommands: CSV with a header row, or JSON
// records. Numbers are printed with 15 significant digits.
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace raysplit::cli {

class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Format { kCsv, kJson };

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

/// x rounded to 15 significant digits, so JSON output matches the CSV text.
double round15(double x);
std::string format_number(double x);

std::string csv_text(const Table& table);
std::string json_text(const Table& table);

/// csv unless the path ends in .json or `requested` says otherwise.
Format resolve_format(const std::string& requested, const std::string& path);

/// Writes to `path`, or to `fallback` when the path is empty.
void write_text(const std::string& text, const std::string& path, std::ostream& fallback);
void write_table(const Table& table, const std::string& path, Format format, std::ostream& fallback);

/// Reads one numeric column of a CSV file with a header row.
std::vector<double> read_csv_column(const std::string& path, const std::string& column);

nlohmann::json read_json_file(const std::string& path);

}  // namespace raysplit::cli
