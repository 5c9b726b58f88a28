#include "bridgekit/interest_model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "bridgekit/io.hpp"

namespace bridgekit {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
  auto fail = [](const char* key) {
    throw std::invalid_argument(std::string(key) + " must be positive");
  };
  if (frequency_threshold <= 0) fail("frequency_threshold");
  if (post_cap == 0) fail("post_cap");
  if (contact_cap == 0) fail("contact_cap");
  if (!(alpha > 0)) fail("alpha");
  if (!(beta > 0)) fail("beta");
  if (!(gamma > 0)) fail("gamma");
  if (!(score_cutoff > 0)) fail("score_cutoff");
  if (top_k <= 0) fail("top_k");
}

std::string_view to_string(InterestOrigin o) {
  switch (o) {
    case InterestOrigin::posts: return "posts";
    case InterestOrigin::profile: return "profile";
    case InterestOrigin::both: return "both";
  }
  return "posts";
}

std::optional<InterestOrigin> parse_interest_origin(std::string_view s) {
  if (s == "posts") return InterestOrigin::posts;
  if (s == "profile") return InterestOrigin::profile;
  if (s == "both") return InterestOrigin::both;
  return std::nullopt;
}

TextResources TextResources::load(const fs::path& data_dir) {
  TextResources r;
  const fs::path stop_dir = data_dir / "stopwords";
  if (!fs::is_directory(stop_dir)) {
    throw DataError(stop_dir.string(), 0, "", "stopword directory not found");
  }
  std::vector<fs::path> lists;
  for (const auto& e : fs::directory_iterator(stop_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") lists.push_back(e.path());
  }
  std::sort(lists.begin(), lists.end());
  for (const auto& p : lists) r.stoplists.push_back(StopwordSet::load(p));

  const fs::path lex = data_dir / "lexicon" / "lexicon.tsv";
  const fs::path rules = data_dir / "lexicon" / "suffix_rules.tsv";
  r.lexicon = NounLexicon::load(lex, fs::exists(rules) ? rules : fs::path{});
  return r;
}

FilteredCounts filtered_counts(std::span<const TokenList> docs,
                               std::span<const StopwordSet> stoplists, const NounLexicon& lexicon) {
  auto clean = [&](int n) {
    return noun_filter(filter_stopwords(count_ngrams(docs, n), stoplists), lexicon);
  };
  return {clean(1), clean(2), clean(3)};
}

namespace {

TermCounts all_terms(const FilteredCounts& c) {
  TermCounts out = c.uni;
  out.insert(c.bi.begin(), c.bi.end());
  out.insert(c.tri.begin(), c.tri.end());
  return out;
}

}  // namespace

InterestModel build_interest_model(const UserRecord& user, const PipelineConfig& cfg,
                                   std::span<const StopwordSet> stoplists,
                                   const NounLexicon& lexicon) {
  std::vector<TokenList> docs;
  docs.reserve(user.posts.size());
  for (const auto& p : user.posts) docs.push_back(tokenize(normalize_text(p.text)));
  const FilteredCounts posts = filtered_counts(docs, stoplists, lexicon);
  const TermCounts merged = merge_ngram_counts(posts.uni, posts.bi, posts.tri);

  std::map<NGram, Interest> by_term;
  for (const auto& [term, count] : merged) {
    if (count >= cfg.frequency_threshold) {
      by_term.emplace(term, Interest{term, count, InterestOrigin::posts});
    }
  }

  const TokenList desc = tokenize(normalize_text(user.profile.description));
  if (!desc.empty()) {
    const std::vector<TokenList> profile_docs{desc};
    for (const auto& [term, count] : all_terms(filtered_counts(profile_docs, stoplists, lexicon))) {
      auto it = by_term.find(term);
      if (it != by_term.end()) {
        it->second.origin = InterestOrigin::both;
        continue;
      }
      auto m = merged.find(term);
      const std::int64_t freq = m == merged.end() ? 1 : std::max<std::int64_t>(1, m->second);
      by_term.emplace(term, Interest{term, freq, InterestOrigin::profile});
    }
  }

  InterestModel model;
  model.user_handle = user.profile.handle;
  for (auto& [term, interest] : by_term) model.interests.push_back(std::move(interest));
  std::stable_sort(model.interests.begin(), model.interests.end(),
                   [](const Interest& a, const Interest& b) { return a.frequency > b.frequency; });
  return model;
}

InterestModel apply_interest_labels(InterestModel model, std::span<const AnnotationLabel> labels) {
  std::map<std::string, std::vector<bool>> verdicts;
  for (const auto& l : labels) {
    if (l.subject != LabelSubject::interest || l.key1 != model.user_handle) continue;
    auto& v = verdicts[l.key2];
    v.insert(v.end(), l.verdicts.begin(), l.verdicts.end());
  }
  std::erase_if(model.interests, [&](const Interest& i) {
    auto it = verdicts.find(i.term.text());
    if (it == verdicts.end()) return false;
    return !AnnotationLabel{LabelSubject::interest, "", "", it->second}.majority();
  });
  return model;
}

std::string interests_tsv(const InterestModel& model) {
  std::string out;
  for (const auto& i : model.interests) {
    out += i.term.text();
    out += '\t';
    out += std::to_string(i.frequency);
    out += '\t';
    out += to_string(i.origin);
    out += '\n';
  }
  return out;
}

InterestModel parse_interests_tsv(std::istream& in, const std::string& user_handle,
                                  const std::string& source_name) {
  InterestModel model;
  model.user_handle = user_handle;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f.size() != 3) throw DataError(source_name, row, "", "expected 3 fields");
    const std::string term = normalize_text(f[0]);
    const TokenList tokens = tokenize(term);
    if (tokens.empty() || tokens.size() > NGram::kMaxN) {
      throw DataError(source_name, row, "term", "must have 1 to 3 tokens");
    }
    std::int64_t freq = 0;
    try {
      std::size_t used = 0;
      freq = std::stoll(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument(f[1]);
    } catch (const std::exception&) {
      throw DataError(source_name, row, "frequency", "not an integer");
    }
    if (freq < 1) throw DataError(source_name, row, "frequency", "must be positive");
    auto origin = parse_interest_origin(f[2]);
    if (!origin) throw DataError(source_name, row, "origin", "expected posts, profile or both");
    model.interests.push_back({NGram(tokens), freq, *origin});
  }
  return model;
}

InterestModel load_interests(const fs::path& path, const std::string& user_handle) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open interests file");
  return parse_interests_tsv(in, user_handle, path.string());
}

}  // namespace bridgekit
