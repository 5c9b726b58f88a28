#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bridgekit/interest_model.hpp"
#include "bridgekit/survey_planner.hpp"

namespace bridgekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::filesystem::path corpus_dir = "corpus";
  std::filesystem::path knowledge_dir = "knowledge";
  std::filesystem::path data_dir;   // stopwords/ and lexicon/
  std::filesystem::path gazetteer;  // defaults to <data_dir>/gazetteer.tsv
  std::filesystem::path countries;  // defaults to <data_dir>/countries.tsv
  std::filesystem::path labels;     // optional annotation labels
  std::filesystem::path responses;  // survey responses for `report`
  std::filesystem::path out_dir = "out";
  PipelineConfig pipeline;
  CountMode count_mode = CountMode::kinds;
  bool exclude_glitches = true;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  int verbosity = 0;

  std::filesystem::path gazetteer_path() const;
  std::filesystem::path countries_path() const;
};

/// Applies one `key=value` setting. Relative paths are resolved against
/// `base`. Unknown keys and malformed values throw UsageError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                   const std::filesystem::path& base);

/// Reads a key=value file ('#' comments, blank lines ignored).
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Directory names under the corpus directory, sorted.
std::vector<std::string> list_users(const std::filesystem::path& corpus_dir);

int cmd_interests(const RunConfig& cfg, std::ostream& log);
int cmd_bridges(const RunConfig& cfg, std::ostream& log);
int cmd_plan(const RunConfig& cfg, std::ostream& log);
int cmd_report(const RunConfig& cfg, std::ostream& log);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bridgekit::cli
