#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bridgekit/bridge_engine.hpp"
#include "bridgekit/corpus_io.hpp"
#include "bridgekit/io.hpp"
#include "bridgekit/knowledge_store.hpp"
#include "bridgekit/survey_planner.hpp"

namespace bridgekit {

/// Sample Pearson correlation. Throws std::invalid_argument on length
/// mismatch, fewer than two points or zero variance in either input.
double pearson(std::span<const double> x, std::span<const double> y);

/// 0.975 quantile of Student's t for `df` degrees of freedom: table lookup
/// for df 1-120, normal quantile beyond. Throws for df == 0.
double t_quantile_975(std::size_t df);

struct MeanCi {
  double mean = 0;
  double lo = 0;
  double hi = 0;
  std::size_t n = 0;
};

/// mean +/- t(n-1) * s / sqrt(n). Only level 0.95 is supported; n < 2 throws.
MeanCi mean_ci(std::span<const double> values, double level = 0.95);

struct CoverageRow {
  CountryCode country;
  std::map<BridgeKind, std::size_t> per_kind;  // distinct users bridged
  std::size_t total = 0;                       // sum over kinds
};

struct CoverageTable {
  std::vector<CoverageRow> rows;  // total descending, then code
};

/// Distinct users per (country, kind). add() and merge() commute, so partial
/// accumulators from parallel workers combine to the sequential result.
class CoverageAccumulator {
 public:
  void add(const Bridge& b);
  void add(std::span<const Bridge> bridges);
  void merge(const CoverageAccumulator& other);
  CoverageTable table() const;

 private:
  std::map<std::pair<CountryCode, BridgeKind>, std::set<std::string>> users_;
};

CoverageTable coverage_report(std::span<const Bridge> bridges);

/// Per kind, Pearson r between country page views and bridged-user counts
/// over every country in `stats` (countries without bridges count as zero).
/// Kinds without variance are omitted with a warning.
std::map<BridgeKind, double> correlation_report(const CoverageTable& coverage,
                                                const PageViewStats& stats,
                                                Warnings* warnings = nullptr);

using KindClass = std::pair<BridgeKind, Popularity>;

struct InterestReport {
  std::map<KindClass, MeanCi> increase;
  std::map<KindClass, double> initial_vs_increase;
};

struct InterestReportOptions {
  bool exclude_glitches = true;
};

/// Cells with fewer than two ratings, or without variance for the
/// correlation, are reported as absent with a warning.
InterestReport interest_report(std::span<const SurveyResponse> responses,
                               const CountryClasses& classes,
                               const InterestReportOptions& options = {},
                               Warnings* warnings = nullptr);

struct Report {
  CoverageTable coverage;
  std::map<BridgeKind, double> correlations;
  InterestReport interest;
};

OrderedJson report_json(const Report& report);

/// Long format: section,country,kind,class,value,mean,ci_lo,ci_hi,n
std::string report_csv(const Report& report);

}  // namespace bridgekit
