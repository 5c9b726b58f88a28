#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bridgekit/types.hpp"

namespace bridgekit {

struct GazetteerEntry {
  std::string alias;  // normalized
  CountryCode country;
  bool ambiguous = false;
};

/// `code<TAB>canonical_name` rows; '#' comment lines are skipped.
std::map<CountryCode, std::string> parse_country_table(std::istream& in,
                                                       const std::string& source_name);
std::map<CountryCode, std::string> load_country_table(const std::filesystem::path& path);

/// Alias table mapping place names, demonyms and cities to countries.
/// Immutable after construction, so lookups are safe from any thread.
///
/// Ambiguous aliases are kept in the table so that they still win longest
/// matches, but they never resolve to a country.
class Gazetteer {
 public:
  Gazetteer(std::map<CountryCode, std::string> countries, std::vector<GazetteerEntry> entries);

  /// `alias<TAB>country_code<TAB>ambiguous(0|1)` plus the country table.
  static Gazetteer load(const std::filesystem::path& gazetteer_tsv,
                        const std::filesystem::path& countries_tsv);
  static Gazetteer parse(std::istream& gazetteer_tsv, std::istream& countries_tsv,
                         const std::string& gazetteer_name = "gazetteer.tsv",
                         const std::string& countries_name = "countries.tsv");

  bool has_country(const CountryCode& code) const { return countries_.count(code) > 0; }
  const std::string& country_name(const CountryCode& code) const;
  const std::map<CountryCode, std::string>& countries() const { return countries_; }

  /// Unambiguous country for a normalized alias, if any.
  std::optional<CountryCode> lookup(std::string_view normalized_alias) const;
  bool is_alias(std::string_view normalized_alias) const;
  bool is_ambiguous(std::string_view normalized_alias) const;

  std::size_t alias_count() const { return aliases_.size(); }
  std::size_t max_alias_tokens() const { return max_tokens_; }

 private:
  struct AliasInfo {
    std::set<CountryCode> countries;
    bool ambiguous = false;
  };

  std::map<CountryCode, std::string> countries_;
  std::unordered_map<std::string, AliasInfo> aliases_;
  std::size_t max_tokens_ = 0;
};

/// Splits a profile location on commas and matches the normalized segments
/// right to left against whole aliases. Returns the first unambiguous match.
std::optional<CountryCode> resolve_location(std::string_view location_string, const Gazetteer& g);

/// Countries mentioned in free text. At each token position the longest alias
/// wins and consumes its tokens; ambiguous aliases consume but never fire.
std::set<CountryCode> detect_country_mentions(std::string_view text, const Gazetteer& g);

}  // namespace bridgekit
