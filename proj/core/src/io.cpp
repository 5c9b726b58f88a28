#include <fstream>
#include <sstream>
#include <system_error>

#include "bridgekit/io.hpp"
#include "bridgekit/types.hpp"

namespace bridgekit {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string(), 0, "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
}

void for_each_jsonl(std::istream& in, const std::string& source_name,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(source_name, lineno, "", std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw DataError(source_name, lineno, "", "expected a JSON object");
    fn(obj, lineno);
  }
}

void for_each_jsonl(const fs::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open file");
  for_each_jsonl(in, path.string(), fn);
}

std::string json_string(const nlohmann::json& obj, std::string_view field,
                        const std::string& source, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) throw DataError(source, line, std::string(field), "missing");
  if (!it->is_string()) throw DataError(source, line, std::string(field), "expected a string");
  return it->get<std::string>();
}

std::string json_string_or(const nlohmann::json& obj, std::string_view field,
                           const std::string& fallback, const std::string& source,
                           std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw DataError(source, line, std::string(field), "expected a string");
  return it->get<std::string>();
}

std::int64_t json_int(const nlohmann::json& obj, std::string_view field, const std::string& source,
                      std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) throw DataError(source, line, std::string(field), "missing");
  if (!it->is_number_integer()) {
    throw DataError(source, line, std::string(field), "expected an integer");
  }
  return it->get<std::int64_t>();
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;
  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow{};
    row.line = line;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started || !field.empty()) throw DataError("csv", line, "", "stray quote");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw DataError("csv", row.line, "", "unterminated quoted field");
  if (field_started || !field.empty() || !row.fields.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                   : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace bridgekit
