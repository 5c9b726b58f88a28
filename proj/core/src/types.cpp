#include "bridgekit/types.hpp"

namespace bridgekit {

namespace {

std::string format_location(const std::string& file, std::size_t line, const std::string& field,
                            const std::string& reason) {
  std::string out = file;
  if (line > 0) out += ":" + std::to_string(line);
  if (!out.empty()) out += ": ";
  if (!field.empty()) out += "field '" + field + "': ";
  return out + reason;
}

}  // namespace

DataError::DataError(std::string file, std::size_t line, std::string field,
                     const std::string& reason)
    : std::runtime_error(format_location(file, line, field, reason)),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)) {}

DataError::DataError(const std::string& reason) : std::runtime_error(reason) {}

bool CountryCode::is_valid(std::string_view code) {
  return code.size() == 2 && code[0] >= 'A' && code[0] <= 'Z' && code[1] >= 'A' &&
         code[1] <= 'Z';
}

CountryCode::CountryCode(std::string_view code) : code_(code) {
  if (!is_valid(code)) {
    throw std::invalid_argument("invalid country code '" + std::string(code) +
                                "' (expected two uppercase letters)");
  }
}

std::string_view to_string(BridgeKind kind) {
  switch (kind) {
    case BridgeKind::wikipedia: return "wikipedia";
    case BridgeKind::wikitravel: return "wikitravel";
    case BridgeKind::famous_person: return "famous_person";
    case BridgeKind::interesting_fact: return "interesting_fact";
    case BridgeKind::web_search: return "web_search";
    case BridgeKind::network_location: return "network_location";
    case BridgeKind::network_tweet: return "network_tweet";
  }
  return "unknown";
}

std::optional<BridgeKind> parse_bridge_kind(std::string_view name) {
  for (BridgeKind k : kAllBridgeKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

}  // namespace bridgekit
