#pragma once

// Per-country knowledge loaded from disk dumps:
//
//   <dir>/countries.tsv            code<TAB>canonical_name (required)
//   <dir>/pageviews.tsv            code<TAB>views (required)
//   <dir>/wikipedia/<CC>.txt       one paragraph per line, split into sentences
//   <dir>/wikitravel/<CC>.txt      one paragraph per line
//   <dir>/facts/<CC>.txt           one fact per line
//   <dir>/people/<CC>.jsonl        {"name","abstract","page_views","url"}
//   <dir>/search/<user>.jsonl      {"country","interest","title","description","url","rank"}
//
// In the .txt files '#' starts a comment line, and "# url: <URL>" sets the
// document's source URL. Every source directory is optional.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "bridgekit/text_pipeline.hpp"
#include "bridgekit/types.hpp"

namespace bridgekit {

enum class UnitSource { wikipedia, wikitravel, facts };

std::string_view to_string(UnitSource s);

struct CountryDoc {
  CountryCode country;
  UnitSource source = UnitSource::wikipedia;
  std::vector<std::string> units;  // sentences (wikipedia) or paragraphs
  std::string source_url;
};

struct FamousPerson {
  std::string name;
  CountryCode country;
  std::string abstract;
  std::int64_t page_views = 0;
  std::string source_url;
};

struct CountryFact {
  CountryCode country;
  std::string text;
};

struct SearchResult {
  std::string user_handle;
  CountryCode country;
  std::string interest;  // normalized
  std::string title;
  std::string description;
  std::string url;
  int rank = 1;
};

struct PageViewStats {
  std::map<CountryCode, std::int64_t> views;
};

/// `code<TAB>views` rows; malformed rows throw DataError with the row number.
PageViewStats load_page_views(const std::filesystem::path& path);

/// Normalized token stream of a text together with each token's byte offset
/// in the normalized string.
struct TokenizedText {
  TokenList tokens;
  std::vector<std::size_t> offsets;
};

TokenizedText tokenize_with_offsets(std::string_view raw);

class KnowledgeStore {
 public:
  struct Contents {
    std::map<CountryCode, std::string> countries;
    std::vector<CountryDoc> docs;
    std::vector<FamousPerson> people;
    std::vector<SearchResult> search;
    PageViewStats page_views;
  };

  /// Validates codes against the country table and builds the indices.
  explicit KnowledgeStore(Contents contents);

  static KnowledgeStore load(const std::filesystem::path& dir, Warnings* warnings = nullptr);

  const std::map<CountryCode, std::string>& countries() const { return countries_; }
  bool has_country(const CountryCode& code) const { return countries_.count(code) > 0; }
  const std::string& country_name(const CountryCode& code) const;

  /// Units in document order; empty when the source lacks the country.
  /// Throws std::invalid_argument for a code outside the country table.
  const std::vector<std::string>& units_for(const CountryCode& code, UnitSource source) const;
  const std::vector<TokenizedText>& tokenized_units(const CountryCode& code,
                                                    UnitSource source) const;
  const std::string& source_url(const CountryCode& code, UnitSource source) const;

  std::span<const FamousPerson> people_for(const CountryCode& code) const;
  std::span<const TokenizedText> person_abstracts(const CountryCode& code) const;
  std::vector<CountryFact> facts_for(const CountryCode& code) const;

  /// Results for one (user, country, normalized interest) triple sorted by rank.
  std::span<const SearchResult> search_results(const std::string& user, const CountryCode& code,
                                               const std::string& interest) const;

  const PageViewStats& page_views() const { return page_views_; }

  /// Number of countries covered per source: wikipedia, wikitravel, people,
  /// facts, search.
  std::map<std::string, std::size_t> coverage() const;

 private:
  struct DocEntry {
    std::vector<std::string> units;
    std::vector<TokenizedText> tokenized;
    std::string source_url;
  };
  struct PeopleEntry {
    std::vector<FamousPerson> people;
    std::vector<TokenizedText> abstracts;
  };

  void require_country(const CountryCode& code) const;

  std::map<CountryCode, std::string> countries_;
  std::map<std::pair<CountryCode, UnitSource>, DocEntry> docs_;
  std::map<CountryCode, PeopleEntry> people_;
  std::map<std::tuple<std::string, CountryCode, std::string>, std::vector<SearchResult>> search_;
  PageViewStats page_views_;
};

}  // namespace bridgekit
