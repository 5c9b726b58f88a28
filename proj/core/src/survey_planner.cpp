#include "bridgekit/survey_planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "bridgekit/corpus_io.hpp"

namespace bridgekit {

std::string_view to_string(Popularity p) {
  return p == Popularity::well_known ? "well_known" : "little_known";
}

std::optional<Popularity> parse_popularity(std::string_view s) {
  if (s == "well_known") return Popularity::well_known;
  if (s == "little_known") return Popularity::little_known;
  return std::nullopt;
}

CountryClasses classify_countries(const PageViewStats& stats) {
  if (stats.views.empty()) throw std::invalid_argument("cannot classify an empty page-view table");
  std::vector<std::pair<CountryCode, std::int64_t>> ranked(stats.views.begin(), stats.views.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const std::size_t well_known = (ranked.size() + 2) / 3;
  CountryClasses out;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out[ranked[i].first] = i < well_known ? Popularity::well_known : Popularity::little_known;
  }
  return out;
}

namespace {

std::size_t count_bridges(const std::vector<Bridge>& bridges, CountMode mode) {
  if (mode == CountMode::candidates) return bridges.size();
  std::set<BridgeKind> kinds;
  for (const auto& b : bridges) kinds.insert(b.kind);
  return kinds.size();
}

}  // namespace

SurveyPlan plan_survey(const std::string& user_handle,
                       const std::map<CountryCode, std::vector<Bridge>>& bridges_by_country,
                       const CountryClasses& classes, std::uint64_t seed,
                       const PlanOptions& options, const std::set<CountryCode>& home,
                       Warnings* warnings) {
  auto warn = [&](std::string code, std::string country, std::string message) {
    if (warnings) warnings->push_back({std::move(code), user_handle, std::move(country),
                                       std::move(message)});
  };

  // count -> codes, per class; maps iterate codes in sorted order.
  std::map<Popularity, std::map<std::size_t, std::vector<CountryCode>, std::greater<>>> groups;
  for (const auto& [code, bridges] : bridges_by_country) {
    if (home.count(code)) continue;
    const std::size_t n = count_bridges(bridges, options.count_mode);
    if (n == 0) continue;
    auto cls = classes.find(code);
    if (cls == classes.end()) {
      warn("unclassified_country", code.str(), "country has bridges but no page views");
      continue;
    }
    groups[cls->second][n].push_back(code);
  }

  SurveyPlan plan;
  plan.user_handle = user_handle;
  plan.seed = seed;
  Lcg rng(seed);
  for (auto [cls, quota] : {std::pair{Popularity::well_known, options.well_known},
                            std::pair{Popularity::little_known, options.little_known}}) {
    std::vector<CountryCode> order;
    for (auto& [count, codes] : groups[cls]) {
      std::vector<CountryCode> group = codes;
      rng.shuffle(group);
      order.insert(order.end(), group.begin(), group.end());
    }
    if (order.size() < quota) {
      warn("survey_shortfall", "",
           std::string(to_string(cls)) + ": " + std::to_string(order.size()) + " of " +
               std::to_string(quota) + " countries available");
    }
    for (std::size_t i = 0; i < order.size() && i < quota; ++i) {
      const auto& bridges = bridges_by_country.at(order[i]);
      plan.selections.push_back(
          {order[i], cls, count_bridges(bridges, options.count_mode), bridges});
    }
  }
  if (plan.selections.empty()) warn("empty_survey", "", "no bridgeable countries");
  return plan;
}

OrderedJson emit_survey(const SurveyPlan& plan,
                        const std::map<CountryCode, std::string>& country_names) {
  auto prompt = [](const char* text) {
    OrderedJson p;
    p["prompt"] = text;
    p["min"] = kMinScore;
    p["max"] = kMaxScore;
    p["value"] = nullptr;
    return p;
  };
  OrderedJson out;
  out["user"] = plan.user_handle;
  out["seed"] = plan.seed;
  OrderedJson pages = OrderedJson::array();
  for (const auto& sel : plan.selections) {
    OrderedJson page;
    page["country"] = sel.country.str();
    auto name = country_names.find(sel.country);
    page["country_name"] = name == country_names.end() ? sel.country.str() : name->second;
    page["class"] = std::string(to_string(sel.popularity));
    page["bridge_count"] = sel.bridge_count;
    page["initial_interest"] = prompt("How interested are you in this country?");
    page["closeness"] = prompt("How close do you feel to this country?");
    OrderedJson blocks = OrderedJson::array();
    for (const auto& b : sel.bridges) {
      OrderedJson block;
      block["kind"] = std::string(to_string(b.kind));
      block["interest"] = b.interest ? OrderedJson(b.interest->text()) : OrderedJson(nullptr);
      block["snippet"] = b.snippet;
      block["source_ref"] = b.source_ref;
      block["increase"] = prompt("Did this increase your interest in the country?");
      block["glitch"] = false;
      blocks.push_back(std::move(block));
    }
    page["bridges"] = std::move(blocks);
    page["comment"] = "";
    pages.push_back(std::move(page));
  }
  out["pages"] = std::move(pages);
  return out;
}

}  // namespace bridgekit
