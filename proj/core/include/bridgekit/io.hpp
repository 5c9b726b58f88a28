#pragma once

// Small file helpers shared by the loaders and the CLI.

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace bridgekit {

using OrderedJson = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, creating
/// parent directories as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Calls `fn(object, line_number)` for every non-blank line of a JSON-lines
/// file. Parse failures and non-object lines throw DataError naming the line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn);
void for_each_jsonl(std::istream& in, const std::string& source_name,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

/// Field accessors that throw DataError(source, line, field, ...) on a
/// missing or mistyped field.
std::string json_string(const nlohmann::json& obj, std::string_view field,
                        const std::string& source, std::size_t line);
std::string json_string_or(const nlohmann::json& obj, std::string_view field,
                           const std::string& fallback, const std::string& source,
                           std::size_t line);
std::int64_t json_int(const nlohmann::json& obj, std::string_view field, const std::string& source,
                      std::size_t line);

/// RFC 4180 style CSV: comma separated, double-quoted fields may contain
/// commas, quotes ("") and newlines. Returns rows with their 1-based starting
/// line numbers.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};
std::vector<CsvRow> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

/// Splits on `sep` keeping empty fields.
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace bridgekit
