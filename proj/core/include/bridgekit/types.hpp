#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bridgekit {

// Malformed input data. Carries the file and 1-based line/row when known so
// the CLI can report "<file>:<line>: field '<x>': <reason>".
class DataError : public std::runtime_error {
 public:
  DataError(std::string file, std::size_t line, std::string field, const std::string& reason);
  explicit DataError(const std::string& reason);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::size_t line_ = 0;
  std::string field_;
};

/// ISO-3166-1 alpha-2 country code. Construction validates the shape (two
/// uppercase ASCII letters); membership in a country table is checked by
/// whoever owns the table.
class CountryCode {
 public:
  CountryCode() = default;
  explicit CountryCode(std::string_view code);

  static bool is_valid(std::string_view code);

  const std::string& str() const { return code_; }
  bool empty() const { return code_.empty(); }

  friend auto operator<=>(const CountryCode&, const CountryCode&) = default;

 private:
  std::string code_;
};

enum class BridgeKind {
  wikipedia,
  wikitravel,
  famous_person,
  interesting_fact,
  web_search,
  network_location,
  network_tweet,
};

inline constexpr std::array<BridgeKind, 7> kAllBridgeKinds = {
    BridgeKind::wikipedia,        BridgeKind::wikitravel, BridgeKind::famous_person,
    BridgeKind::interesting_fact, BridgeKind::web_search, BridgeKind::network_location,
    BridgeKind::network_tweet,
};

std::string_view to_string(BridgeKind kind);
std::optional<BridgeKind> parse_bridge_kind(std::string_view name);

// One structured warning; the CLI serializes these to warnings.jsonl.
struct Warning {
  std::string code;
  std::string user;
  std::string country;
  std::string message;

  friend auto operator<=>(const Warning&, const Warning&) = default;
};

using Warnings = std::vector<Warning>;

}  // namespace bridgekit

template <>
struct std::hash<bridgekit::CountryCode> {
  std::size_t operator()(const bridgekit::CountryCode& c) const noexcept {
    return std::hash<std::string>{}(c.str());
  }
};
