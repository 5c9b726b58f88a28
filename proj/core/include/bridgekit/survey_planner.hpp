#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bridgekit/bridge_engine.hpp"
#include "bridgekit/io.hpp"
#include "bridgekit/knowledge_store.hpp"

namespace bridgekit {

enum class Popularity { well_known, little_known };

std::string_view to_string(Popularity p);
std::optional<Popularity> parse_popularity(std::string_view s);

using CountryClasses = std::map<CountryCode, Popularity>;

/// Ranks countries by views descending (ties by code) and marks the first
/// ceil(N/3) as well-known. Throws std::invalid_argument for empty stats.
CountryClasses classify_countries(const PageViewStats& stats);

/// 64-bit linear congruential generator (Knuth's MMIX constants). next()
/// returns the high 31 bits of the advanced state.
class Lcg {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_ >> 33;
  }

  /// Fisher-Yates from the back: for i = n-1 down to 1 swap i with next() % (i+1).
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i-- > 1;) {
      const std::size_t j = static_cast<std::size_t>(next() % (i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

enum class CountMode { kinds, candidates };

struct PlanOptions {
  std::size_t well_known = 3;
  std::size_t little_known = 4;
  CountMode count_mode = CountMode::kinds;
};

struct SurveySelection {
  CountryCode country;
  Popularity popularity = Popularity::little_known;
  std::size_t bridge_count = 0;
  std::vector<Bridge> bridges;
};

struct SurveyPlan {
  std::string user_handle;
  std::vector<SurveySelection> selections;  // well-known first
  std::uint64_t seed = 0;
};

/// Within each class, countries are ordered by bridge count descending; each
/// group of equal counts is sorted by code and then shuffled with one LCG
/// stream seeded by `seed`, well-known groups first. Countries without
/// bridges, home countries and unclassified countries are never selected.
/// Shortfalls add a warning.
SurveyPlan plan_survey(const std::string& user_handle,
                       const std::map<CountryCode, std::vector<Bridge>>& bridges_by_country,
                       const CountryClasses& classes, std::uint64_t seed,
                       const PlanOptions& options = {}, const std::set<CountryCode>& home = {},
                       Warnings* warnings = nullptr);

/// One page per selected country with 0-10 prompts for initial interest and
/// closeness, one block per bridge with an interest-increase prompt and a
/// glitch flag, and a free-text slot.
OrderedJson emit_survey(const SurveyPlan& plan,
                        const std::map<CountryCode, std::string>& country_names = {});

}  // namespace bridgekit
