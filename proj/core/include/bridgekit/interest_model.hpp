#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bridgekit/corpus_io.hpp"
#include "bridgekit/text_pipeline.hpp"

namespace bridgekit {

/// Every tunable constant of the pipeline. Defaults are the reference values.
struct PipelineConfig {
  std::int64_t frequency_threshold = 3;
  std::size_t post_cap = 3200;
  std::size_t contact_cap = 5000;
  double alpha = 30.0;
  double beta = 20.0;
  double gamma = 10.0;
  double score_cutoff = 50.0;
  int top_k = 5;

  /// Throws std::invalid_argument if any value is not positive.
  void validate() const;
  LoadOptions load_options() const { return {post_cap, contact_cap}; }
};

enum class InterestOrigin { posts, profile, both };

std::string_view to_string(InterestOrigin o);
std::optional<InterestOrigin> parse_interest_origin(std::string_view s);

struct Interest {
  NGram term;
  std::int64_t frequency = 0;
  InterestOrigin origin = InterestOrigin::posts;

  friend bool operator==(const Interest&, const Interest&) = default;
};

struct InterestModel {
  std::string user_handle;
  std::vector<Interest> interests;  // frequency descending, then term text
};

/// Stoplists and the noun lexicon used by the interest pipeline.
struct TextResources {
  std::vector<StopwordSet> stoplists;
  NounLexicon lexicon;

  /// Loads `stopwords/*.txt`, `lexicon/lexicon.tsv` and
  /// `lexicon/suffix_rules.tsv` from a data directory.
  static TextResources load(const std::filesystem::path& data_dir);
};

/// Counted, stopword- and noun-filtered n-grams of a set of documents, before
/// the merge step. Exposed for tests and benchmarks.
struct FilteredCounts {
  TermCounts uni, bi, tri;
};
FilteredCounts filtered_counts(std::span<const TokenList> docs,
                               std::span<const StopwordSet> stoplists, const NounLexicon& lexicon);

/// Posts are counted with every post as its own document. Terms whose merged
/// count reaches the threshold are kept; the profile description's terms are
/// added without merge or threshold. A description term also kept from posts
/// gets origin `both`; a description-only term gets max(1, merged post count).
InterestModel build_interest_model(const UserRecord& user, const PipelineConfig& cfg,
                                   std::span<const StopwordSet> stoplists,
                                   const NounLexicon& lexicon);

/// Removes interests whose (user, term) label has a false majority. Labels
/// for other users and fact labels are ignored.
InterestModel apply_interest_labels(InterestModel model, std::span<const AnnotationLabel> labels);

/// `term<TAB>frequency<TAB>origin` lines, no header.
std::string interests_tsv(const InterestModel& model);
InterestModel parse_interests_tsv(std::istream& in, const std::string& user_handle,
                                  const std::string& source_name);
InterestModel load_interests(const std::filesystem::path& path, const std::string& user_handle);

}  // namespace bridgekit
