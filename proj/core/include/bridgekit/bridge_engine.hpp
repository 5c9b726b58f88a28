#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bridgekit/corpus_io.hpp"
#include "bridgekit/gazetteer.hpp"
#include "bridgekit/interest_model.hpp"
#include "bridgekit/io.hpp"
#include "bridgekit/knowledge_store.hpp"

namespace bridgekit {

struct Bridge {
  std::string user_handle;
  CountryCode country;
  BridgeKind kind = BridgeKind::wikipedia;
  std::optional<NGram> interest;
  std::string snippet;
  std::string source_ref;  // URL#unit, URL, contact handle or post id
  std::optional<double> score;

  friend bool operator==(const Bridge&, const Bridge&) = default;
};

/// Inputs of the search-result score. Indicators are 0 or 1.
struct ScoreInputs {
  int t_c = 0;
  int t_i = 0;
  int d_c = 0;
  int d_i = 0;
  int rank = 1;
};

/// Byte offset of the first whole-token occurrence of `phrase` in a tokenized
/// text, measured in the normalized string.
std::optional<std::size_t> find_phrase(const TokenizedText& text, const NGram& phrase);
bool contains_phrase(const TokenList& tokens, const TokenList& phrase);

struct SnippetMatch {
  std::size_t unit_index = 0;
  std::size_t offset = 0;
};

/// The unit minimizing (unit index, offset) among units containing the
/// interest as whole tokens, compared case-insensitively after normalization.
std::optional<SnippetMatch> match_interest_snippet(std::span<const std::string> units,
                                                   const NGram& interest);
std::optional<SnippetMatch> match_interest_snippet(std::span<const TokenizedText> units,
                                                   const NGram& interest);

/// Highest page views among persons whose abstract contains `interest` (all
/// persons when no interest is given); ties go to the smallest name.
std::optional<FamousPerson> select_famous_person(std::span<const FamousPerson> persons,
                                                 const std::optional<NGram>& interest);

double score_search_result(const ScoreInputs& s, const PipelineConfig& cfg);

ScoreInputs compute_score_inputs(const SearchResult& result, std::string_view country_name,
                                 const NGram& interest);

/// At most one web-search bridge for the results of one (user, country,
/// interest) triple: ranks 1..top_k, score strictly above the cutoff, best
/// score wins and ties go to the lower rank.
std::vector<Bridge> select_search_bridges(std::span<const SearchResult> results,
                                          std::string_view country_name, const NGram& interest,
                                          const PipelineConfig& cfg);

/// Reciprocal contacts located in `country`, in contact order. A contact's
/// stored country wins over resolving its location string.
std::vector<Bridge> network_location_bridges(const UserRecord& user, const CountryCode& country,
                                             const Gazetteer& g);

/// Posts of reciprocal contacts that mention `country`, in contact then post
/// order.
std::vector<Bridge> network_tweet_bridges(const UserRecord& user, const CountryCode& country,
                                          const Gazetteer& g);

inline constexpr std::size_t kMaxCandidatesPerKind = 6;

struct BridgeSet {
  std::vector<Bridge> selected;    // at most one per kind, kind order
  std::vector<Bridge> candidates;  // up to six per kind, kind then priority order
};

/// All bridges for one (user, country) pair. Interests are tried in model
/// order. Fact labels with a false majority remove candidates before
/// selection; they are keyed by the normalized interest (empty for bridges
/// without one) and the bridge's source_ref. Throws std::invalid_argument for
/// a home country.
BridgeSet build_bridges(const UserRecord& user, const CountryCode& country,
                        const KnowledgeStore& store, const InterestModel& model,
                        const PipelineConfig& cfg, const Gazetteer& g,
                        std::span<const AnnotationLabel> fact_labels = {});

std::vector<Bridge> build_all_bridges(const UserRecord& user, const CountryCode& country,
                                      const KnowledgeStore& store, const InterestModel& model,
                                      const PipelineConfig& cfg, const Gazetteer& g);

/// Field order: user, country, kind, interest, snippet, source_ref, score.
/// Absent optionals are written as null.
OrderedJson bridge_to_json(const Bridge& b);
Bridge bridge_from_json(const nlohmann::json& obj, const std::string& source, std::size_t line);
std::string bridges_jsonl(std::span<const Bridge> bridges);
std::vector<Bridge> load_bridges(const std::filesystem::path& path);

}  // namespace bridgekit
