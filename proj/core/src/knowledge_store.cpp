#include "bridgekit/knowledge_store.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "bridgekit/gazetteer.hpp"
#include "bridgekit/io.hpp"

namespace bridgekit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(UnitSource s) {
  switch (s) {
    case UnitSource::wikipedia: return "wikipedia";
    case UnitSource::wikitravel: return "wikitravel";
    case UnitSource::facts: return "facts";
  }
  return "unknown";
}

TokenizedText tokenize_with_offsets(std::string_view raw) {
  TokenizedText out;
  const std::string norm = normalize_text(raw);
  std::size_t i = 0;
  while (i < norm.size()) {
    while (i < norm.size() && norm[i] == ' ') ++i;
    std::size_t j = i;
    while (j < norm.size() && norm[j] != ' ') ++j;
    if (j > i) {
      out.tokens.push_back(norm.substr(i, j - i));
      out.offsets.push_back(i);
    }
    i = j;
  }
  return out;
}

PageViewStats load_page_views(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open page views");
  PageViewStats stats;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 2) throw DataError(path.string(), row, "", "expected code<TAB>views");
    if (!CountryCode::is_valid(f[0])) {
      throw DataError(path.string(), row, "code", "invalid country code '" + f[0] + "'");
    }
    if (f[1].empty() || f[1].size() > 18 ||
        !std::all_of(f[1].begin(), f[1].end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw DataError(path.string(), row, "views", "expected a non-negative integer");
    }
    if (!stats.views.emplace(CountryCode(f[0]), std::stoll(f[1])).second) {
      throw DataError(path.string(), row, "code", "duplicate country '" + f[0] + "'");
    }
  }
  return stats;
}

KnowledgeStore::KnowledgeStore(Contents c)
    : countries_(std::move(c.countries)), page_views_(std::move(c.page_views)) {
  auto check = [&](const CountryCode& code, const std::string& what) {
    if (!has_country(code)) {
      throw DataError(what + ": country " + code.str() + " is not in the country table");
    }
  };
  std::set<CountryCode> documented;
  for (auto& doc : c.docs) {
    check(doc.country, std::string(to_string(doc.source)));
    if (doc.units.empty()) continue;
    documented.insert(doc.country);
    DocEntry& entry = docs_[{doc.country, doc.source}];
    entry.source_url = doc.source_url;
    for (auto& u : doc.units) {
      entry.tokenized.push_back(tokenize_with_offsets(u));
      entry.units.push_back(std::move(u));
    }
  }
  for (auto& p : c.people) {
    check(p.country, "people");
    if (p.page_views < 0) throw DataError("people: negative page views for " + p.name);
    documented.insert(p.country);
    PeopleEntry& entry = people_[p.country];
    entry.abstracts.push_back(tokenize_with_offsets(p.abstract));
    entry.people.push_back(std::move(p));
  }
  for (auto& r : c.search) {
    check(r.country, "search");
    if (r.rank < 1) throw DataError("search: rank must be >= 1 for " + r.url);
    search_[{r.user_handle, r.country, r.interest}].push_back(std::move(r));
  }
  for (auto& [key, results] : search_) {
    std::stable_sort(results.begin(), results.end(),
                     [](const SearchResult& a, const SearchResult& b) { return a.rank < b.rank; });
  }
  for (const auto& [code, views] : page_views_.views) {
    check(code, "pageviews");
    if (views < 0) throw DataError("pageviews: negative views for " + code.str());
  }
  for (const auto& code : documented) {
    if (!page_views_.views.count(code)) {
      throw DataError("pageviews: no row for documented country " + code.str());
    }
  }
}

namespace {

// Sorted list of regular files in `dir` with the given extension.
std::vector<fs::path> list_files(const fs::path& dir, std::string_view ext) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountryCode code_from_filename(const fs::path& p) {
  const std::string stem = p.stem().string();
  if (!CountryCode::is_valid(stem)) {
    throw DataError(p.string(), 0, "", "file name must be an ISO alpha-2 code");
  }
  return CountryCode(stem);
}

CountryDoc read_unit_file(const fs::path& path, UnitSource source) {
  CountryDoc doc;
  doc.country = code_from_filename(path);
  doc.source = source;
  doc.source_url = std::string(to_string(source)) + "/" + doc.country.str();
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open file");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# url:", 0) == 0) {
      auto b = line.find_first_not_of(' ', 6);
      if (b != std::string::npos) doc.source_url = line.substr(b);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (source == UnitSource::wikipedia) {
      for (auto& s : split_sentences(line)) doc.units.push_back(std::move(s));
    } else if (line.find_first_not_of(" \t") != std::string::npos) {
      doc.units.push_back(line);
    }
  }
  return doc;
}

}  // namespace

KnowledgeStore KnowledgeStore::load(const fs::path& dir, Warnings* warnings) {
  const fs::path table = dir / "countries.tsv";
  if (!fs::exists(table)) throw DataError(table.string(), 0, "", "missing country table");
  Contents c;
  c.countries = load_country_table(table);
  c.page_views = load_page_views(dir / "pageviews.tsv");

  for (UnitSource src : {UnitSource::wikipedia, UnitSource::wikitravel, UnitSource::facts}) {
    for (const auto& path : list_files(dir / std::string(to_string(src)), ".txt")) {
      CountryDoc doc = read_unit_file(path, src);
      if (doc.units.empty()) {
        if (warnings) {
          warnings->push_back({"empty_document", "", doc.country.str(),
                               path.string() + " has no text units"});
        }
        continue;
      }
      c.docs.push_back(std::move(doc));
    }
  }

  for (const auto& path : list_files(dir / "people", ".jsonl")) {
    const CountryCode code = code_from_filename(path);
    const std::string src = path.string();
    for_each_jsonl(path, [&](const json& obj, std::size_t line) {
      FamousPerson p;
      p.country = code;
      p.name = json_string(obj, "name", src, line);
      p.abstract = json_string(obj, "abstract", src, line);
      p.page_views = json_int(obj, "page_views", src, line);
      if (p.page_views < 0) throw DataError(src, line, "page_views", "must be >= 0");
      p.source_url = json_string_or(obj, "url", "", src, line);
      c.people.push_back(std::move(p));
    });
  }

  for (const auto& path : list_files(dir / "search", ".jsonl")) {
    const std::string user = path.stem().string();
    const std::string src = path.string();
    for_each_jsonl(path, [&](const json& obj, std::size_t line) {
      SearchResult r;
      r.user_handle = user;
      const std::string code = json_string(obj, "country", src, line);
      if (!CountryCode::is_valid(code)) throw DataError(src, line, "country", "invalid code");
      r.country = CountryCode(code);
      r.interest = normalize_text(json_string(obj, "interest", src, line));
      r.title = json_string_or(obj, "title", "", src, line);
      r.description = json_string_or(obj, "description", "", src, line);
      r.url = json_string(obj, "url", src, line);
      const auto rank = json_int(obj, "rank", src, line);
      if (rank < 1) throw DataError(src, line, "rank", "must be >= 1");
      r.rank = static_cast<int>(rank);
      c.search.push_back(std::move(r));
    });
  }
  return KnowledgeStore(std::move(c));
}

void KnowledgeStore::require_country(const CountryCode& code) const {
  if (!has_country(code)) throw std::invalid_argument("unknown country code " + code.str());
}

const std::string& KnowledgeStore::country_name(const CountryCode& code) const {
  require_country(code);
  return countries_.at(code);
}

const std::vector<std::string>& KnowledgeStore::units_for(const CountryCode& code,
                                                          UnitSource source) const {
  require_country(code);
  static const std::vector<std::string> kEmpty;
  auto it = docs_.find({code, source});
  return it == docs_.end() ? kEmpty : it->second.units;
}

const std::vector<TokenizedText>& KnowledgeStore::tokenized_units(const CountryCode& code,
                                                                  UnitSource source) const {
  require_country(code);
  static const std::vector<TokenizedText> kEmpty;
  auto it = docs_.find({code, source});
  return it == docs_.end() ? kEmpty : it->second.tokenized;
}

const std::string& KnowledgeStore::source_url(const CountryCode& code, UnitSource source) const {
  require_country(code);
  static const std::string kEmpty;
  auto it = docs_.find({code, source});
  return it == docs_.end() ? kEmpty : it->second.source_url;
}

std::span<const FamousPerson> KnowledgeStore::people_for(const CountryCode& code) const {
  require_country(code);
  auto it = people_.find(code);
  if (it == people_.end()) return {};
  return it->second.people;
}

std::span<const TokenizedText> KnowledgeStore::person_abstracts(const CountryCode& code) const {
  require_country(code);
  auto it = people_.find(code);
  if (it == people_.end()) return {};
  return it->second.abstracts;
}

std::vector<CountryFact> KnowledgeStore::facts_for(const CountryCode& code) const {
  std::vector<CountryFact> out;
  for (const auto& text : units_for(code, UnitSource::facts)) out.push_back({code, text});
  return out;
}

std::span<const SearchResult> KnowledgeStore::search_results(const std::string& user,
                                                             const CountryCode& code,
                                                             const std::string& interest) const {
  auto it = search_.find({user, code, interest});
  if (it == search_.end()) return {};
  return it->second;
}

std::map<std::string, std::size_t> KnowledgeStore::coverage() const {
  std::map<std::string, std::size_t> out{
      {"wikipedia", 0}, {"wikitravel", 0}, {"people", 0}, {"facts", 0}, {"search", 0}};
  for (const auto& [key, entry] : docs_) ++out[std::string(to_string(key.second))];
  out["people"] = people_.size();
  std::set<CountryCode> searched;
  for (const auto& [key, results] : search_) searched.insert(std::get<1>(key));
  out["search"] = searched.size();
  return out;
}

}  // namespace bridgekit
