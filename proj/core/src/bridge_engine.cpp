#include "bridgekit/bridge_engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bridgekit {

using nlohmann::json;

bool contains_phrase(const TokenList& tokens, const TokenList& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

std::optional<std::size_t> find_phrase(const TokenizedText& text, const NGram& phrase) {
  const auto& t = text.tokens;
  const auto& p = phrase.tokens();
  auto it = std::search(t.begin(), t.end(), p.begin(), p.end());
  if (it == t.end()) return std::nullopt;
  return text.offsets[static_cast<std::size_t>(it - t.begin())];
}

std::optional<SnippetMatch> match_interest_snippet(std::span<const TokenizedText> units,
                                                   const NGram& interest) {
  // Offsets only order matches within one unit, so the first unit holding the
  // phrase is always the minimum.
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (auto off = find_phrase(units[i], interest)) return SnippetMatch{i, *off};
  }
  return std::nullopt;
}

std::optional<SnippetMatch> match_interest_snippet(std::span<const std::string> units,
                                                   const NGram& interest) {
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (auto off = find_phrase(tokenize_with_offsets(units[i]), interest)) {
      return SnippetMatch{i, *off};
    }
  }
  return std::nullopt;
}

namespace {

// Index of the most viewed person accepted by `keep`; ties go to the smaller name.
template <class Pred>
std::optional<std::size_t> best_person(std::span<const FamousPerson> persons, Pred keep) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < persons.size(); ++i) {
    if (!keep(i)) continue;
    if (!best || persons[i].page_views > persons[*best].page_views ||
        (persons[i].page_views == persons[*best].page_views &&
         persons[i].name < persons[*best].name)) {
      best = i;
    }
  }
  return best;
}

}  // namespace

std::optional<FamousPerson> select_famous_person(std::span<const FamousPerson> persons,
                                                 const std::optional<NGram>& interest) {
  auto idx = best_person(persons, [&](std::size_t i) {
    return !interest ||
           contains_phrase(tokenize(normalize_text(persons[i].abstract)), interest->tokens());
  });
  if (!idx) return std::nullopt;
  return persons[*idx];
}

double score_search_result(const ScoreInputs& s, const PipelineConfig& cfg) {
  return cfg.alpha * (s.t_c + s.t_i) + cfg.beta * (s.d_c + s.d_i) -
         static_cast<double>(s.rank) / cfg.gamma;
}

ScoreInputs compute_score_inputs(const SearchResult& result, std::string_view country_name,
                                 const NGram& interest) {
  const TokenList title = tokenize(normalize_text(result.title));
  const TokenList desc = tokenize(normalize_text(result.description));
  const TokenList country = tokenize(normalize_text(country_name));
  ScoreInputs s;
  s.t_c = contains_phrase(title, country) ? 1 : 0;
  s.t_i = contains_phrase(title, interest.tokens()) ? 1 : 0;
  s.d_c = contains_phrase(desc, country) ? 1 : 0;
  s.d_i = contains_phrase(desc, interest.tokens()) ? 1 : 0;
  s.rank = result.rank;
  return s;
}

std::vector<Bridge> select_search_bridges(std::span<const SearchResult> results,
                                          std::string_view country_name, const NGram& interest,
                                          const PipelineConfig& cfg) {
  const SearchResult* best = nullptr;
  double best_score = 0;
  for (const auto& r : results) {
    if (r.rank < 1 || r.rank > cfg.top_k) continue;
    const double score = score_search_result(compute_score_inputs(r, country_name, interest), cfg);
    if (!(score > cfg.score_cutoff)) continue;
    if (!best || score > best_score || (score == best_score && r.rank < best->rank)) {
      best = &r;
      best_score = score;
    }
  }
  if (!best) return {};
  Bridge b;
  b.user_handle = best->user_handle;
  b.country = best->country;
  b.kind = BridgeKind::web_search;
  b.interest = interest;
  b.snippet = best->description.empty() ? best->title : best->title + ": " + best->description;
  b.source_ref = best->url;
  b.score = best_score;
  return {b};
}

namespace {

std::optional<CountryCode> contact_country(const Contact& c, const Gazetteer& g) {
  if (c.resolved_country) return c.resolved_country;
  return resolve_location(c.profile.location, g);
}

}  // namespace

std::vector<Bridge> network_location_bridges(const UserRecord& user, const CountryCode& country,
                                             const Gazetteer& g) {
  std::vector<Bridge> out;
  for (const auto& c : user.contacts) {
    if (!c.is_reciprocal || contact_country(c, g) != country) continue;
    Bridge b;
    b.user_handle = user.profile.handle;
    b.country = country;
    b.kind = BridgeKind::network_location;
    b.snippet = c.profile.screen_name + " (" + c.profile.location + ")";
    b.source_ref = c.profile.handle;
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Bridge> network_tweet_bridges(const UserRecord& user, const CountryCode& country,
                                          const Gazetteer& g) {
  std::vector<Bridge> out;
  for (const auto& c : user.contacts) {
    if (!c.is_reciprocal) continue;
    for (const auto& p : c.posts) {
      if (!detect_country_mentions(p.text, g).count(country)) continue;
      Bridge b;
      b.user_handle = user.profile.handle;
      b.country = country;
      b.kind = BridgeKind::network_tweet;
      b.snippet = p.text;
      b.source_ref = p.id;
      out.push_back(std::move(b));
    }
  }
  return out;
}

namespace {

class FactFilter {
 public:
  explicit FactFilter(std::span<const AnnotationLabel> labels) {
    std::map<std::pair<std::string, std::string>, std::vector<bool>> votes;
    for (const auto& l : labels) {
      if (l.subject != LabelSubject::fact) continue;
      auto& v = votes[{l.key1, l.key2}];
      v.insert(v.end(), l.verdicts.begin(), l.verdicts.end());
    }
    for (auto& [key, v] : votes) {
      if (!AnnotationLabel{LabelSubject::fact, "", "", v}.majority()) rejected_.insert(key);
    }
  }

  bool rejected(const std::optional<NGram>& interest, const std::string& ref) const {
    return rejected_.count({interest ? interest->text() : std::string(), ref}) > 0;
  }

 private:
  std::set<std::pair<std::string, std::string>> rejected_;
};

std::string unit_ref(const std::string& url, std::size_t index) {
  return url + "#" + std::to_string(index);
}

bool has_ref(const std::vector<Bridge>& bucket, const std::string& ref) {
  return std::any_of(bucket.begin(), bucket.end(),
                     [&](const Bridge& b) { return b.source_ref == ref; });
}

}  // namespace

BridgeSet build_bridges(const UserRecord& user, const CountryCode& country,
                        const KnowledgeStore& store, const InterestModel& model,
                        const PipelineConfig& cfg, const Gazetteer& g,
                        std::span<const AnnotationLabel> fact_labels) {
  if (user.home_countries.count(country)) {
    throw std::invalid_argument("country " + country.str() + " is a home country of " +
                                user.profile.handle);
  }
  const std::string& country_name = store.country_name(country);
  const FactFilter filter(fact_labels);
  const std::string& handle = user.profile.handle;
  std::map<BridgeKind, std::vector<Bridge>> buckets;

  auto make = [&](BridgeKind kind, std::optional<NGram> interest, std::string snippet,
                  std::string ref) {
    return Bridge{handle, country, kind, std::move(interest), std::move(snippet), std::move(ref),
                  std::nullopt};
  };

  for (auto [src, kind] : {std::pair{UnitSource::wikipedia, BridgeKind::wikipedia},
                           std::pair{UnitSource::wikitravel, BridgeKind::wikitravel}}) {
    const auto& units = store.tokenized_units(country, src);
    const auto& raw = store.units_for(country, src);
    const auto& url = store.source_url(country, src);
    auto& bucket = buckets[kind];
    for (const auto& interest : model.interests) {
      if (bucket.size() >= kMaxCandidatesPerKind) break;
      for (std::size_t i = 0; i < units.size(); ++i) {
        if (!find_phrase(units[i], interest.term)) continue;
        const std::string ref = unit_ref(url, i);
        if (filter.rejected(interest.term, ref)) continue;
        if (!has_ref(bucket, ref)) bucket.push_back(make(kind, interest.term, raw[i], ref));
        break;
      }
    }
  }

  {
    const auto persons = store.people_for(country);
    const auto abstracts = store.person_abstracts(country);
    auto& bucket = buckets[BridgeKind::famous_person];
    auto ref_of = [&](std::size_t i) {
      return persons[i].source_url.empty() ? persons[i].name : persons[i].source_url;
    };
    auto add = [&](std::size_t i, const std::optional<NGram>& interest) {
      bucket.push_back(make(BridgeKind::famous_person, interest, persons[i].abstract, ref_of(i)));
    };
    for (const auto& interest : model.interests) {
      if (bucket.size() >= kMaxCandidatesPerKind) break;
      auto idx = best_person(persons, [&](std::size_t i) {
        return contains_phrase(abstracts[i].tokens, interest.term.tokens()) &&
               !filter.rejected(interest.term, ref_of(i));
      });
      if (idx && !has_ref(bucket, ref_of(*idx))) add(*idx, interest.term);
    }
    if (bucket.size() < kMaxCandidatesPerKind) {
      auto idx = best_person(persons, [&](std::size_t i) {
        return !filter.rejected(std::nullopt, ref_of(i));
      });
      if (idx && !has_ref(bucket, ref_of(*idx))) add(*idx, std::nullopt);
    }
  }

  {
    const auto& facts = store.units_for(country, UnitSource::facts);
    const auto& url = store.source_url(country, UnitSource::facts);
    auto& bucket = buckets[BridgeKind::interesting_fact];
    for (std::size_t i = 0; i < facts.size() && bucket.size() < kMaxCandidatesPerKind; ++i) {
      const std::string ref = unit_ref(url, i);
      if (!filter.rejected(std::nullopt, ref)) {
        bucket.push_back(make(BridgeKind::interesting_fact, std::nullopt, facts[i], ref));
      }
    }
  }

  {
    auto& bucket = buckets[BridgeKind::web_search];
    for (const auto& interest : model.interests) {
      if (bucket.size() >= kMaxCandidatesPerKind) break;
      std::vector<SearchResult> results;
      for (const auto& r : store.search_results(handle, country, interest.term.text())) {
        if (!filter.rejected(interest.term, r.url)) results.push_back(r);
      }
      for (auto& b : select_search_bridges(results, country_name, interest.term, cfg)) {
        if (!has_ref(bucket, b.source_ref)) bucket.push_back(std::move(b));
      }
    }
  }

  for (auto [kind, list] :
       {std::pair{BridgeKind::network_location, network_location_bridges(user, country, g)},
        std::pair{BridgeKind::network_tweet, network_tweet_bridges(user, country, g)}}) {
    auto& bucket = buckets[kind];
    for (auto& b : list) {
      if (bucket.size() >= kMaxCandidatesPerKind) break;
      if (!filter.rejected(std::nullopt, b.source_ref)) bucket.push_back(std::move(b));
    }
  }

  BridgeSet out;
  for (BridgeKind kind : kAllBridgeKinds) {
    const auto& bucket = buckets[kind];
    if (bucket.empty()) continue;
    out.selected.push_back(bucket.front());
    out.candidates.insert(out.candidates.end(), bucket.begin(), bucket.end());
  }
  return out;
}

std::vector<Bridge> build_all_bridges(const UserRecord& user, const CountryCode& country,
                                      const KnowledgeStore& store, const InterestModel& model,
                                      const PipelineConfig& cfg, const Gazetteer& g) {
  return build_bridges(user, country, store, model, cfg, g).selected;
}

OrderedJson bridge_to_json(const Bridge& b) {
  OrderedJson j;
  j["user"] = b.user_handle;
  j["country"] = b.country.str();
  j["kind"] = std::string(to_string(b.kind));
  j["interest"] = b.interest ? OrderedJson(b.interest->text()) : OrderedJson(nullptr);
  j["snippet"] = b.snippet;
  j["source_ref"] = b.source_ref;
  j["score"] = b.score ? OrderedJson(*b.score) : OrderedJson(nullptr);
  return j;
}

Bridge bridge_from_json(const json& obj, const std::string& source, std::size_t line) {
  Bridge b;
  b.user_handle = json_string(obj, "user", source, line);
  const std::string code = json_string(obj, "country", source, line);
  if (!CountryCode::is_valid(code)) throw DataError(source, line, "country", "invalid code");
  b.country = CountryCode(code);
  const std::string kind = json_string(obj, "kind", source, line);
  auto k = parse_bridge_kind(kind);
  if (!k) throw DataError(source, line, "kind", "unknown bridge kind '" + kind + "'");
  b.kind = *k;
  if (auto it = obj.find("interest"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError(source, line, "interest", "expected string or null");
    const TokenList t = tokenize(normalize_text(it->get<std::string>()));
    if (t.empty() || t.size() > NGram::kMaxN) {
      throw DataError(source, line, "interest", "must have 1 to 3 tokens");
    }
    b.interest = NGram(t);
  }
  b.snippet = json_string(obj, "snippet", source, line);
  b.source_ref = json_string(obj, "source_ref", source, line);
  if (auto it = obj.find("score"); it != obj.end() && !it->is_null()) {
    if (!it->is_number()) throw DataError(source, line, "score", "expected number or null");
    b.score = it->get<double>();
  }
  return b;
}

std::string bridges_jsonl(std::span<const Bridge> bridges) {
  std::string out;
  for (const auto& b : bridges) {
    out += bridge_to_json(b).dump();
    out += '\n';
  }
  return out;
}

std::vector<Bridge> load_bridges(const std::filesystem::path& path) {
  std::vector<Bridge> out;
  const std::string src = path.string();
  for_each_jsonl(path, [&](const json& obj, std::size_t line) {
    out.push_back(bridge_from_json(obj, src, line));
  });
  return out;
}

}  // namespace bridgekit
