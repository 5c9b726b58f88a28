#pragma once

// Text normalization, tokenization, n-gram counting, stopword filtering and
// noun selection. Every function here is pure and safe to call concurrently.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace bridgekit {

using TokenList = std::vector<std::string>;

/// An ordered sequence of 1 to 3 normalized tokens.
class NGram {
 public:
  static constexpr std::size_t kMaxN = 3;

  /// Throws std::invalid_argument unless 1 <= size <= 3 and every token is
  /// non-empty and free of whitespace.
  explicit NGram(TokenList tokens);

  /// Builds an n-gram from already-normalized, space-separated text.
  static NGram from_text(std::string_view text);

  std::size_t n() const { return tokens_.size(); }
  const TokenList& tokens() const { return tokens_; }

  /// Tokens joined by single spaces.
  std::string text() const;

  /// True if `other` occurs as a contiguous sub-sequence of this n-gram.
  bool contains(const NGram& other) const;

  friend auto operator<=>(const NGram&, const NGram&) = default;

 private:
  TokenList tokens_;
};

using TermCounts = std::map<NGram, std::int64_t>;

enum class StopwordProvenance { english_general, twitter_top500, custom };

std::string_view to_string(StopwordProvenance p);

/// Guesses provenance from a list's file name ("english*", "twitter*").
StopwordProvenance provenance_from_filename(const std::filesystem::path& path);

class StopwordSet {
 public:
  StopwordSet() = default;
  /// Entries are passed through normalize_text; empty results are dropped.
  StopwordSet(const std::vector<std::string>& words, StopwordProvenance provenance);

  /// One term per line, UTF-8, '#' starts a comment line.
  static StopwordSet parse(std::istream& in, StopwordProvenance provenance);
  static StopwordSet load(const std::filesystem::path& path, StopwordProvenance provenance);
  static StopwordSet load(const std::filesystem::path& path) {
    return load(path, provenance_from_filename(path));
  }

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  StopwordProvenance provenance() const { return provenance_; }

 private:
  std::unordered_set<std::string> words_;
  StopwordProvenance provenance_ = StopwordProvenance::custom;
};

bool is_stopword(std::span<const StopwordSet> stoplists, std::string_view word);

// Lexicon + ordered suffix rules standing in for a statistical tagger. Lookup
// is total: lexicon hit, else first matching suffix rule, else "noun".
class NounLexicon {
 public:
  using TagSet = std::set<std::string>;

  static constexpr std::string_view kDefaultTag = "noun";

  void add_entry(std::string word, TagSet tags);
  void add_suffix_rule(std::string suffix, std::string tag);

  /// `word<TAB>tag[,tag...]` and `suffix<TAB>tag` files; '#' comment lines.
  static NounLexicon parse(std::istream& lexicon, std::istream* suffix_rules);
  static NounLexicon load(const std::filesystem::path& lexicon_path,
                          const std::filesystem::path& suffix_rules_path = {});

  TagSet resolve(std::string_view word) const;
  bool is_noun(std::string_view word) const;

  std::size_t entry_count() const { return entries_.size(); }
  std::size_t rule_count() const { return suffix_rules_.size(); }

 private:
  std::unordered_map<std::string, TagSet> entries_;
  std::vector<std::pair<std::string, std::string>> suffix_rules_;
};

/// noun / plural-noun, plus the Penn tags NN, NNS, NNP, NNPS.
bool is_noun_tag(std::string_view tag);

/// NFC-normalizes and lowercases, then removes URL spans (scheme://... and
/// www....), @-handles and every character that is not a letter, combining
/// mark, decimal digit, hyphen or apostrophe. Hyphens and apostrophes at word
/// edges are dropped; whitespace runs collapse to one space. Idempotent.
std::string normalize_text(std::string_view raw);

/// Splits normalized text on whitespace, dropping empty pieces.
TokenList tokenize(std::string_view normalized);

/// Counts contiguous n-grams inside each document; windows never cross a
/// document boundary. Throws std::invalid_argument unless n is 1, 2 or 3.
TermCounts count_ngrams(std::span<const TokenList> docs, int n);

/// Subtracts higher-order counts from the lower-order grams they contain:
/// every bigram loses the summed count of trigram keys containing it, then
/// every unigram loses the summed (already reduced) count of bigram keys
/// containing it. Results clamp at zero and non-positive entries are dropped.
/// Trigrams are never reduced.
TermCounts merge_ngram_counts(const TermCounts& uni, const TermCounts& bi, const TermCounts& tri);

/// Drops unigrams found in any stoplist and phrases whose tokens are all
/// stopwords.
TermCounts filter_stopwords(const TermCounts& counts, std::span<const StopwordSet> stoplists);

/// Keeps unigrams whose resolved tag set contains a noun tag. Longer n-grams
/// pass through untouched.
TermCounts noun_filter(const TermCounts& counts, const NounLexicon& lexicon);

/// Splits a paragraph into sentences at [.?!] followed by whitespace and an
/// uppercase letter or digit, except after known abbreviations and single
/// letter initials.
std::vector<std::string> split_sentences(std::string_view paragraph);

}  // namespace bridgekit
