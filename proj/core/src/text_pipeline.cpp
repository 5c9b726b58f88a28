#include "bridgekit/text_pipeline.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "bridgekit/types.hpp"

namespace bridgekit {

// ---------------------------------------------------------------------------
// NGram

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

NGram::NGram(TokenList tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.size() > kMaxN) {
    throw std::invalid_argument("n-gram must have 1 to 3 tokens, got " +
                                std::to_string(tokens_.size()));
  }
  for (const auto& t : tokens_) {
    if (t.empty() || std::any_of(t.begin(), t.end(), is_ascii_space)) {
      throw std::invalid_argument("n-gram token '" + t + "' is empty or contains whitespace");
    }
  }
}

NGram NGram::from_text(std::string_view text) { return NGram(tokenize(text)); }

std::string NGram::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += ' ';
    out += tokens_[i];
  }
  return out;
}

bool NGram::contains(const NGram& other) const {
  if (other.n() > n()) return false;
  for (std::size_t start = 0; start + other.n() <= n(); ++start) {
    if (std::equal(other.tokens_.begin(), other.tokens_.end(), tokens_.begin() + start)) {
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

constexpr char32_t kApostrophe = U'\'';
constexpr char32_t kHyphen = U'-';

bool is_kept_char(char32_t c) {
  if (c == kApostrophe || c == kHyphen) return true;
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_ND_MASK)) != 0;
}

bool is_scheme_char(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'0' && c <= U'9') || c == U'+' || c == U'.' ||
         c == U'-';
}

bool is_handle_char(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'0' && c <= U'9') || c == U'_';
}

bool is_alnum(char32_t c) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_L_MASK | U_GC_ND_MASK)) != 0;
}

// Removes "scheme://..." and "www...." spans; both run to the end of the chunk.
void strip_urls(std::u32string& chunk) {
  for (;;) {
    std::size_t cut = std::u32string::npos;
    if (auto p = chunk.find(U"://"); p != std::u32string::npos) {
      std::size_t start = p;
      while (start > 0 && is_scheme_char(chunk[start - 1])) --start;
      cut = start;
    }
    for (std::size_t p = chunk.find(U"www."); p != std::u32string::npos;
         p = chunk.find(U"www.", p + 1)) {
      if (p == 0 || !is_alnum(chunk[p - 1])) {
        cut = std::min(cut, p);
        break;
      }
    }
    if (cut == std::u32string::npos) return;
    chunk.erase(cut);
  }
}

void strip_handles(std::u32string& chunk) {
  std::u32string out;
  out.reserve(chunk.size());
  for (std::size_t i = 0; i < chunk.size();) {
    if (chunk[i] == U'@' && i + 1 < chunk.size() && is_handle_char(chunk[i + 1])) {
      ++i;
      while (i < chunk.size() && is_handle_char(chunk[i])) ++i;
      continue;
    }
    out.push_back(chunk[i++]);
  }
  chunk.swap(out);
}

std::u32string clean_chunk(std::u32string chunk) {
  strip_urls(chunk);
  strip_handles(chunk);
  std::u32string kept;
  kept.reserve(chunk.size());
  for (char32_t c : chunk) {
    if (c == U'’' || c == U'‘') c = kApostrophe;
    if (is_kept_char(c)) kept.push_back(c);
  }
  auto edge = [](char32_t c) { return c == kApostrophe || c == kHyphen; };
  std::size_t b = 0, e = kept.size();
  while (b < e && edge(kept[b])) ++b;
  while (e > b && edge(kept[e - 1])) --e;
  return kept.substr(b, e - b);
}

void append_utf8(std::string& out, char32_t c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), err);
  if (!err) out.append(buf, static_cast<std::size_t>(len));
}

icu::UnicodeString nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString out = norm->normalize(s, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalization failed");
  return out;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  if (raw.empty()) return {};
  icu::UnicodeString s =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  s = nfc(s);
  s.toLower(icu::Locale::getRoot());
  s = nfc(s);

  std::string out;
  std::u32string chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    std::u32string cleaned = clean_chunk(std::move(chunk));
    chunk.clear();
    if (cleaned.empty()) return;
    if (!out.empty()) out += ' ';
    for (char32_t c : cleaned) append_utf8(out, c);
  };
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
    const UChar32 c = s.char32At(i);
    if (u_isUWhiteSpace(c)) {
      flush();
    } else {
      chunk.push_back(static_cast<char32_t>(c));
    }
  }
  flush();
  return out;
}

TokenList tokenize(std::string_view normalized) {
  TokenList tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && is_ascii_space(normalized[i])) ++i;
    std::size_t j = i;
    while (j < normalized.size() && !is_ascii_space(normalized[j])) ++j;
    if (j > i) tokens.emplace_back(normalized.substr(i, j - i));
    i = j;
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Counting

TermCounts count_ngrams(std::span<const TokenList> docs, int n) {
  if (n < 1 || n > static_cast<int>(NGram::kMaxN)) {
    throw std::invalid_argument("count_ngrams: n must be 1, 2 or 3, got " + std::to_string(n));
  }
  const auto width = static_cast<std::size_t>(n);
  TermCounts counts;
  for (const auto& doc : docs) {
    for (std::size_t i = 0; i + width <= doc.size(); ++i) {
      ++counts[NGram(TokenList(doc.begin() + i, doc.begin() + i + width))];
    }
  }
  return counts;
}

namespace {

// Distinct contiguous sub-grams of `g` with exactly `width` tokens.
std::set<NGram> subgrams(const NGram& g, std::size_t width) {
  std::set<NGram> out;
  const auto& t = g.tokens();
  for (std::size_t i = 0; i + width <= t.size(); ++i) {
    out.emplace(TokenList(t.begin() + i, t.begin() + i + width));
  }
  return out;
}

// Reduces each entry of `lower` by the summed count of `higher` keys that
// contain it.
TermCounts reduce_by(const TermCounts& lower, const TermCounts& higher, std::size_t width) {
  std::map<NGram, std::int64_t> reduction;
  for (const auto& [g, c] : higher) {
    if (c <= 0) continue;
    for (auto& sub : subgrams(g, width)) {
      if (lower.count(sub)) reduction[sub] += c;
    }
  }
  TermCounts out;
  for (const auto& [g, c] : lower) {
    auto it = reduction.find(g);
    const std::int64_t r = it == reduction.end() ? 0 : it->second;
    out.emplace(g, std::max<std::int64_t>(0, c - r));
  }
  return out;
}

}  // namespace

TermCounts merge_ngram_counts(const TermCounts& uni, const TermCounts& bi, const TermCounts& tri) {
  const TermCounts bi_reduced = reduce_by(bi, tri, 2);
  const TermCounts uni_reduced = reduce_by(uni, bi_reduced, 1);
  TermCounts out;
  for (const TermCounts* part : {&uni_reduced, &bi_reduced, &tri}) {
    for (const auto& [g, c] : *part) {
      if (c > 0) out[g] += c;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stopwords

std::string_view to_string(StopwordProvenance p) {
  switch (p) {
    case StopwordProvenance::english_general: return "english-general";
    case StopwordProvenance::twitter_top500: return "twitter-top500";
    case StopwordProvenance::custom: return "custom";
  }
  return "custom";
}

StopwordProvenance provenance_from_filename(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  if (stem.rfind("english", 0) == 0) return StopwordProvenance::english_general;
  if (stem.rfind("twitter", 0) == 0) return StopwordProvenance::twitter_top500;
  return StopwordProvenance::custom;
}

StopwordSet::StopwordSet(const std::vector<std::string>& words, StopwordProvenance provenance)
    : provenance_(provenance) {
  for (const auto& w : words) {
    std::string n = normalize_text(w);
    if (!n.empty()) words_.insert(std::move(n));
  }
}

StopwordSet StopwordSet::parse(std::istream& in, StopwordProvenance provenance) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return StopwordSet(words, provenance);
}

StopwordSet StopwordSet::load(const std::filesystem::path& path, StopwordProvenance provenance) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open stopword list");
  return parse(in, provenance);
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

bool is_stopword(std::span<const StopwordSet> stoplists, std::string_view word) {
  return std::any_of(stoplists.begin(), stoplists.end(),
                     [&](const StopwordSet& s) { return s.contains(word); });
}

TermCounts filter_stopwords(const TermCounts& counts, std::span<const StopwordSet> stoplists) {
  TermCounts out;
  for (const auto& [g, c] : counts) {
    const auto& toks = g.tokens();
    const bool all_stop = std::all_of(toks.begin(), toks.end(), [&](const std::string& t) {
      return is_stopword(stoplists, t);
    });
    if (!all_stop) out.emplace(g, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Noun lexicon

bool is_noun_tag(std::string_view tag) {
  return tag == "noun" || tag == "plural-noun" || tag == "NN" || tag == "NNS" || tag == "NNP" ||
         tag == "NNPS";
}

void NounLexicon::add_entry(std::string word, TagSet tags) {
  entries_[std::move(word)] = std::move(tags);
}

void NounLexicon::add_suffix_rule(std::string suffix, std::string tag) {
  suffix_rules_.emplace_back(std::move(suffix), std::move(tag));
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

NounLexicon NounLexicon::parse(std::istream& lexicon, std::istream* suffix_rules) {
  NounLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lexicon, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2) throw DataError("lexicon", lineno, "", "expected word<TAB>tags");
    std::string word = normalize_text(fields[0]);
    if (word.empty()) throw DataError("lexicon", lineno, "word", "empty after normalization");
    TagSet tags;
    for (auto& t : split_fields(fields[1], ',')) {
      t = trim(t);
      if (!t.empty()) tags.insert(t);
    }
    if (tags.empty()) throw DataError("lexicon", lineno, "tags", "no tags given");
    lex.add_entry(std::move(word), std::move(tags));
  }
  if (suffix_rules) {
    lineno = 0;
    while (std::getline(*suffix_rules, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto fields = split_fields(line, '\t');
      if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty()) {
        throw DataError("suffix_rules", lineno, "", "expected suffix<TAB>tag");
      }
      lex.add_suffix_rule(trim(fields[0]), trim(fields[1]));
    }
  }
  return lex;
}

NounLexicon NounLexicon::load(const std::filesystem::path& lexicon_path,
                              const std::filesystem::path& suffix_rules_path) {
  std::ifstream lex(lexicon_path);
  if (!lex) throw DataError(lexicon_path.string(), 0, "", "cannot open lexicon");
  if (suffix_rules_path.empty()) return parse(lex, nullptr);
  std::ifstream rules(suffix_rules_path);
  if (!rules) throw DataError(suffix_rules_path.string(), 0, "", "cannot open suffix rules");
  return parse(lex, &rules);
}

NounLexicon::TagSet NounLexicon::resolve(std::string_view word) const {
  if (auto it = entries_.find(std::string(word)); it != entries_.end()) return it->second;
  for (const auto& [suffix, tag] : suffix_rules_) {
    if (word.size() > suffix.size() &&
        word.compare(word.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return {tag};
    }
  }
  return {std::string(kDefaultTag)};
}

bool NounLexicon::is_noun(std::string_view word) const {
  const TagSet tags = resolve(word);
  return std::any_of(tags.begin(), tags.end(), [](const std::string& t) { return is_noun_tag(t); });
}

TermCounts noun_filter(const TermCounts& counts, const NounLexicon& lexicon) {
  TermCounts out;
  for (const auto& [g, c] : counts) {
    if (g.n() != 1 || lexicon.is_noun(g.tokens().front())) out.emplace(g, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sentence splitting

namespace {

const std::set<std::string, std::less<>>& abbreviations() {
  static const std::set<std::string, std::less<>> kAbbrev = {
      "mr",  "mrs", "ms",  "dr",  "prof", "st",  "jr",   "sr",  "vs",  "etc", "no",   "mt",
      "ft",  "gen", "col", "lt",  "sgt",  "capt", "gov", "sen", "rep", "inc", "ltd",  "co",
      "corp", "jan", "feb", "mar", "apr",  "jun", "jul",  "aug", "sep", "sept", "oct", "nov",
      "dec", "u.s", "u.k", "e.g", "i.e",  "a.m", "p.m",  "approx", "est", "fig", "vol", "ca"};
  return kAbbrev;
}

bool is_closer(unsigned char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

// Decodes the code point at `i`; advances `i`.
UChar32 next_cp(std::string_view s, std::size_t& i) {
  UChar32 c;
  int32_t pos = static_cast<int32_t>(i);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), pos, static_cast<int32_t>(s.size()), c);
  i = static_cast<std::size_t>(pos);
  return c;
}

bool starts_sentence(std::string_view s, std::size_t i) {
  while (i < s.size()) {
    const UChar32 c = next_cp(s, i);
    if (c == '"' || c == '(' || c == 0x201C || c == 0x2018 || c == '\'') continue;
    return u_isupper(c) || u_istitle(c) || u_isdigit(c);
  }
  return false;
}

bool ends_with_abbreviation(std::string_view s, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !is_ascii_space(s[b - 1])) --b;
  std::string word(s.substr(b, dot - b));
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) {
    word.erase(word.begin());
  }
  if (word.empty()) return false;
  std::string lower;
  for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (abbreviations().count(lower)) return true;
  // Single-letter initial such as "J." in "J. R. R. Tolkien".
  return word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0])) &&
         std::isupper(static_cast<unsigned char>(word[0]));
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::vector<std::string> out;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_ascii_space(paragraph[b])) ++b;
    while (e > b && is_ascii_space(paragraph[e - 1])) --e;
    if (e > b) out.emplace_back(paragraph.substr(b, e - b));
  };
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    const char c = paragraph[i];
    if (c != '.' && c != '?' && c != '!') {
      ++i;
      continue;
    }
    const std::size_t term = i;
    std::size_t j = i;
    while (j < paragraph.size() &&
           (paragraph[j] == '.' || paragraph[j] == '?' || paragraph[j] == '!')) {
      ++j;
    }
    while (j < paragraph.size() && is_closer(static_cast<unsigned char>(paragraph[j]))) ++j;
    if (j >= paragraph.size() || !is_ascii_space(paragraph[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < paragraph.size() && is_ascii_space(paragraph[k])) ++k;
    const bool abbrev = c == '.' && j == term + 1 && ends_with_abbreviation(paragraph, term);
    if (k < paragraph.size() && !abbrev && starts_sentence(paragraph, k)) {
      emit(start, j);
      start = k;
    }
    i = k;
  }
  emit(start, paragraph.size());
  return out;
}

}  // namespace bridgekit
