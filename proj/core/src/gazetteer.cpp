#include "bridgekit/gazetteer.hpp"

#include <fstream>
#include <istream>

#include "bridgekit/io.hpp"
#include "bridgekit/text_pipeline.hpp"

namespace bridgekit {

namespace fs = std::filesystem;

std::map<CountryCode, std::string> parse_country_table(std::istream& in,
                                                       const std::string& source_name) {
  std::map<CountryCode, std::string> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 2) throw DataError(source_name, row, "", "expected code<TAB>name");
    if (!CountryCode::is_valid(f[0])) {
      throw DataError(source_name, row, "code", "invalid country code '" + f[0] + "'");
    }
    if (f[1].empty()) throw DataError(source_name, row, "canonical_name", "empty");
    if (!out.emplace(CountryCode(f[0]), f[1]).second) {
      throw DataError(source_name, row, "code", "duplicate country '" + f[0] + "'");
    }
  }
  return out;
}

std::map<CountryCode, std::string> load_country_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open country table");
  return parse_country_table(in, path.string());
}

Gazetteer::Gazetteer(std::map<CountryCode, std::string> countries,
                     std::vector<GazetteerEntry> entries)
    : countries_(std::move(countries)) {
  for (auto& e : entries) {
    if (!has_country(e.country)) {
      throw DataError("gazetteer alias '" + e.alias + "' refers to unknown country " +
                      e.country.str());
    }
    std::string alias = normalize_text(e.alias);
    if (alias.empty()) throw DataError("gazetteer alias '" + e.alias + "' is empty");
    AliasInfo& info = aliases_[alias];
    const bool fresh = info.countries.empty();
    if (!fresh && (!info.ambiguous || !e.ambiguous)) {
      throw DataError("gazetteer alias '" + alias +
                      "' maps to several entries; all of them must be flagged ambiguous");
    }
    info.countries.insert(e.country);
    info.ambiguous = fresh ? e.ambiguous : (info.ambiguous && e.ambiguous);
    max_tokens_ = std::max(max_tokens_, tokenize(alias).size());
  }
}

Gazetteer Gazetteer::parse(std::istream& gazetteer_tsv, std::istream& countries_tsv,
                           const std::string& gazetteer_name, const std::string& countries_name) {
  auto countries = parse_country_table(countries_tsv, countries_name);
  std::vector<GazetteerEntry> entries;
  std::string line;
  std::size_t row = 0;
  while (std::getline(gazetteer_tsv, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 3) throw DataError(gazetteer_name, row, "", "expected 3 fields");
    if (!CountryCode::is_valid(f[1])) {
      throw DataError(gazetteer_name, row, "country_code", "invalid code '" + f[1] + "'");
    }
    if (!countries.count(CountryCode(f[1]))) {
      throw DataError(gazetteer_name, row, "country_code", "unknown country '" + f[1] + "'");
    }
    if (f[2] != "0" && f[2] != "1") {
      throw DataError(gazetteer_name, row, "ambiguous", "expected 0 or 1");
    }
    entries.push_back({f[0], CountryCode(f[1]), f[2] == "1"});
  }
  return Gazetteer(std::move(countries), std::move(entries));
}

Gazetteer Gazetteer::load(const fs::path& gazetteer_tsv, const fs::path& countries_tsv) {
  std::ifstream g(gazetteer_tsv);
  if (!g) throw DataError(gazetteer_tsv.string(), 0, "", "cannot open gazetteer");
  std::ifstream c(countries_tsv);
  if (!c) throw DataError(countries_tsv.string(), 0, "", "cannot open country table");
  return parse(g, c, gazetteer_tsv.string(), countries_tsv.string());
}

const std::string& Gazetteer::country_name(const CountryCode& code) const {
  auto it = countries_.find(code);
  if (it == countries_.end()) throw std::out_of_range("unknown country " + code.str());
  return it->second;
}

std::optional<CountryCode> Gazetteer::lookup(std::string_view normalized_alias) const {
  auto it = aliases_.find(std::string(normalized_alias));
  if (it == aliases_.end() || it->second.ambiguous) return std::nullopt;
  return *it->second.countries.begin();
}

bool Gazetteer::is_alias(std::string_view normalized_alias) const {
  return aliases_.count(std::string(normalized_alias)) > 0;
}

bool Gazetteer::is_ambiguous(std::string_view normalized_alias) const {
  auto it = aliases_.find(std::string(normalized_alias));
  return it != aliases_.end() && it->second.ambiguous;
}

std::optional<CountryCode> resolve_location(std::string_view location_string, const Gazetteer& g) {
  const auto segments = split(location_string, ',');
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    const std::string seg = normalize_text(*it);
    if (seg.empty()) continue;
    if (auto code = g.lookup(seg)) return code;
  }
  return std::nullopt;
}

std::set<CountryCode> detect_country_mentions(std::string_view text, const Gazetteer& g) {
  std::set<CountryCode> found;
  const TokenList tokens = tokenize(normalize_text(text));
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest = std::min(g.max_alias_tokens(), tokens.size() - i);
    std::string candidate;
    std::size_t best = 0;
    for (std::size_t len = 1; len <= longest; ++len) {
      if (len > 1) candidate += ' ';
      candidate += tokens[i + len - 1];
      if (g.is_alias(candidate)) best = len;
    }
    if (best > 0) {
      std::string alias = tokens[i];
      for (std::size_t k = 1; k < best; ++k) alias += ' ' + tokens[i + k];
      if (auto code = g.lookup(alias)) found.insert(*code);
    }
    i += best > 0 ? best : 1;
  }
  return found;
}

}  // namespace bridgekit
