#include "bridgekit/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace bridgekit {

namespace {

// Student t 0.975 quantiles for df = 1..120.
constexpr std::array<double, 120> kT975 = {
    12.706205, 4.302653, 3.182446, 2.776445, 2.570582,
    2.446912, 2.364624, 2.306004, 2.262157, 2.228139,
    2.200985, 2.178813, 2.160369, 2.144787, 2.131450,
    2.119905, 2.109816, 2.100922, 2.093024, 2.085963,
    2.079614, 2.073873, 2.068658, 2.063899, 2.059539,
    2.055529, 2.051831, 2.048407, 2.045230, 2.042272,
    2.039513, 2.036933, 2.034515, 2.032245, 2.030108,
    2.028094, 2.026192, 2.024394, 2.022691, 2.021075,
    2.019541, 2.018082, 2.016692, 2.015368, 2.014103,
    2.012896, 2.011741, 2.010635, 2.009575, 2.008559,
    2.007584, 2.006647, 2.005746, 2.004879, 2.004045,
    2.003241, 2.002465, 2.001717, 2.000995, 2.000298,
    1.999624, 1.998972, 1.998341, 1.997730, 1.997138,
    1.996564, 1.996008, 1.995469, 1.994945, 1.994437,
    1.993943, 1.993464, 1.992997, 1.992543, 1.992102,
    1.991673, 1.991254, 1.990847, 1.990450, 1.990063,
    1.989686, 1.989319, 1.988960, 1.988610, 1.988268,
    1.987934, 1.987608, 1.987290, 1.986979, 1.986675,
    1.986377, 1.986086, 1.985802, 1.985523, 1.985251,
    1.984984, 1.984723, 1.984467, 1.984217, 1.983972,
    1.983731, 1.983495, 1.983264, 1.983038, 1.982815,
    1.982597, 1.982383, 1.982173, 1.981967, 1.981765,
    1.981567, 1.981372, 1.981180, 1.980992, 1.980808,
    1.980626, 1.980448, 1.980272, 1.980100, 1.979930,
};

constexpr double kZ975 = 1.959964;

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("pearson: need at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw std::invalid_argument("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double t_quantile_975(std::size_t df) {
  if (df == 0) throw std::invalid_argument("t quantile needs df >= 1");
  return df <= kT975.size() ? kT975[df - 1] : kZ975;
}

MeanCi mean_ci(std::span<const double> values, double level) {
  if (level != 0.95) throw std::invalid_argument("mean_ci: only level 0.95 is supported");
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("mean_ci: need at least two values");
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double s = std::sqrt(ss / static_cast<double>(n - 1));
  const double half = t_quantile_975(n - 1) * s / std::sqrt(static_cast<double>(n));
  return {mean, mean - half, mean + half, n};
}

void CoverageAccumulator::add(const Bridge& b) {
  users_[{b.country, b.kind}].insert(b.user_handle);
}

void CoverageAccumulator::add(std::span<const Bridge> bridges) {
  for (const auto& b : bridges) add(b);
}

void CoverageAccumulator::merge(const CoverageAccumulator& other) {
  for (const auto& [key, users] : other.users_) users_[key].insert(users.begin(), users.end());
}

CoverageTable CoverageAccumulator::table() const {
  std::map<CountryCode, CoverageRow> rows;
  for (const auto& [key, users] : users_) {
    CoverageRow& row = rows[key.first];
    row.country = key.first;
    row.per_kind[key.second] = users.size();
    row.total += users.size();
  }
  CoverageTable out;
  for (auto& [code, row] : rows) out.rows.push_back(std::move(row));
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const CoverageRow& a, const CoverageRow& b) { return a.total > b.total; });
  return out;
}

CoverageTable coverage_report(std::span<const Bridge> bridges) {
  CoverageAccumulator acc;
  acc.add(bridges);
  return acc.table();
}

std::map<BridgeKind, double> correlation_report(const CoverageTable& coverage,
                                                const PageViewStats& stats, Warnings* warnings) {
  std::map<CountryCode, const CoverageRow*> by_code;
  for (const auto& row : coverage.rows) {
    by_code[row.country] = &row;
    if (!stats.views.count(row.country) && warnings) {
      warnings->push_back({"missing_page_views", "", row.country.str(),
                           "bridged country has no page views; left out of correlations"});
    }
  }
  std::map<BridgeKind, double> out;
  for (BridgeKind kind : kAllBridgeKinds) {
    std::vector<double> x, y;
    for (const auto& [code, views] : stats.views) {
      x.push_back(static_cast<double>(views));
      double count = 0;
      if (auto it = by_code.find(code); it != by_code.end()) {
        if (auto k = it->second->per_kind.find(kind); k != it->second->per_kind.end()) {
          count = static_cast<double>(k->second);
        }
      }
      y.push_back(count);
    }
    try {
      out[kind] = pearson(x, y);
    } catch (const std::invalid_argument& e) {
      if (warnings) {
        warnings->push_back({"degenerate_correlation", "", "",
                             std::string(to_string(kind)) + ": " + e.what()});
      }
    }
  }
  return out;
}

InterestReport interest_report(std::span<const SurveyResponse> responses,
                               const CountryClasses& classes, const InterestReportOptions& options,
                               Warnings* warnings) {
  auto warn = [&](std::string code, std::string user, std::string country, std::string msg) {
    if (warnings) warnings->push_back({std::move(code), std::move(user), std::move(country),
                                       std::move(msg)});
  };
  std::map<KindClass, std::pair<std::vector<double>, std::vector<double>>> cells;
  for (const auto& r : responses) {
    auto cls = classes.find(r.country);
    if (cls == classes.end()) {
      warn("unclassified_country", r.user_handle, r.country.str(),
           "response for a country without page views skipped");
      continue;
    }
    for (const auto& [kind, increase] : r.per_bridge) {
      if (options.exclude_glitches && r.glitch.count(kind)) continue;
      auto& cell = cells[{kind, cls->second}];
      cell.first.push_back(static_cast<double>(r.initial_interest));
      cell.second.push_back(static_cast<double>(increase));
    }
  }
  InterestReport out;
  for (const auto& [key, cell] : cells) {
    const std::string label =
        std::string(to_string(key.first)) + "/" + std::string(to_string(key.second));
    if (cell.second.size() < 2) {
      warn("empty_cell", "", "", label + ": fewer than two ratings");
      continue;
    }
    out.increase[key] = mean_ci(cell.second);
    try {
      out.initial_vs_increase[key] = pearson(cell.first, cell.second);
    } catch (const std::invalid_argument& e) {
      warn("degenerate_correlation", "", "", label + ": " + e.what());
    }
  }
  return out;
}

OrderedJson report_json(const Report& report) {
  OrderedJson out;
  OrderedJson coverage = OrderedJson::array();
  for (const auto& row : report.coverage.rows) {
    OrderedJson r;
    r["country"] = row.country.str();
    OrderedJson kinds = OrderedJson::object();
    for (BridgeKind k : kAllBridgeKinds) {
      auto it = row.per_kind.find(k);
      kinds[std::string(to_string(k))] = it == row.per_kind.end() ? 0 : it->second;
    }
    r["kinds"] = std::move(kinds);
    r["total"] = row.total;
    coverage.push_back(std::move(r));
  }
  out["coverage"] = std::move(coverage);

  OrderedJson corr = OrderedJson::object();
  for (const auto& [kind, r] : report.correlations) corr[std::string(to_string(kind))] = r;
  out["correlations"] = std::move(corr);

  OrderedJson stats = OrderedJson::array();
  for (const auto& [key, ci] : report.interest.increase) {
    OrderedJson s;
    s["kind"] = std::string(to_string(key.first));
    s["class"] = std::string(to_string(key.second));
    s["mean"] = ci.mean;
    s["ci_lo"] = ci.lo;
    s["ci_hi"] = ci.hi;
    s["n"] = ci.n;
    stats.push_back(std::move(s));
  }
  out["interest_increase"] = std::move(stats);

  OrderedJson ivi = OrderedJson::array();
  for (const auto& [key, r] : report.interest.initial_vs_increase) {
    OrderedJson s;
    s["kind"] = std::string(to_string(key.first));
    s["class"] = std::string(to_string(key.second));
    s["r"] = r;
    ivi.push_back(std::move(s));
  }
  out["initial_vs_increase"] = std::move(ivi);
  return out;
}

namespace {

std::string num(double v) {
  OrderedJson j = v;
  return j.dump();
}

}  // namespace

std::string report_csv(const Report& report) {
  std::string out = "section,country,kind,class,value,mean,ci_lo,ci_hi,n\n";
  for (const auto& row : report.coverage.rows) {
    for (BridgeKind k : kAllBridgeKinds) {
      auto it = row.per_kind.find(k);
      const std::size_t v = it == row.per_kind.end() ? 0 : it->second;
      out += "coverage," + row.country.str() + "," + std::string(to_string(k)) + ",," +
             std::to_string(v) + ",,,,\n";
    }
    out += "coverage," + row.country.str() + ",total,," + std::to_string(row.total) + ",,,,\n";
  }
  for (const auto& [kind, r] : report.correlations) {
    out += "correlation,," + std::string(to_string(kind)) + ",," + num(r) + ",,,,\n";
  }
  for (const auto& [key, ci] : report.interest.increase) {
    out += "interest_increase,," + std::string(to_string(key.first)) + "," +
           std::string(to_string(key.second)) + ",," + num(ci.mean) + "," + num(ci.lo) + "," +
           num(ci.hi) + "," + std::to_string(ci.n) + "\n";
  }
  for (const auto& [key, r] : report.interest.initial_vs_increase) {
    out += "initial_vs_increase,," + std::string(to_string(key.first)) + "," +
           std::string(to_string(key.second)) + "," + num(r) + ",,,,\n";
  }
  return out;
}

}  // namespace bridgekit
