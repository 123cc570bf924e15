#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace infoflow {

/// Bad configuration or usage (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or unusable input data (CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
/// Throws DataError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or leading/trailing space.
std::string csv_escape(std::string_view field);

std::string trim(std::string_view s);

/// Reads a whole file; DataError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Reads lines, stripping a trailing '\r'.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace infoflow
