// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   bridgekit_acceptance               run all criteria
//   bridgekit_acceptance --criterion N run criterion N only
//
// Exit status is 0 only when every criterion that ran passed.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "bridgekit/bridge_engine.hpp"
#include "bridgekit/cli.hpp"
#include "bridgekit/evaluation.hpp"
#include "bridgekit/io.hpp"
#include "bridgekit/survey_planner.hpp"
#include "expected_report.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace bk = bridgekit;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kScoreTol = 1e-9;
constexpr double kPearsonTol = 1e-9;
constexpr double kCiTol = 1e-6;

// Runtime budgets in milliseconds, where the criterion sets one.
constexpr double kC1BudgetMs = 1000;
constexpr double kC2BudgetMs = 10000;
constexpr double kC10BudgetMs = 5000;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    else if (detail.size() < 400) detail += "; " + why;
    ok = false;
  }
  void check(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream o;
  o << std::setprecision(prec) << v;
  return o.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bridgekit");
  std::ostringstream out, err;
  return bk::cli::run(args, out, err);
}

std::string conf() { return (bk::testing::fixture_dir() / "fixture.conf").string(); }

bool pipeline_step(const std::string& cmd, const fs::path& out,
                   std::vector<std::string> extra = {}) {
  std::vector<std::string> args = {cmd, "--config", conf(), "--out", out.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  return run_cli(args) == bk::cli::kExitOk;
}

// All regular files below `dir`, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = bk::read_file(e.path());
  }
  return out;
}

const std::vector<std::string> kUsers = {"alice", "bilal", "chen"};

// 1 ---------------------------------------------------------------------------

Outcome c01() {
  Outcome o;
  const bk::PipelineConfig cfg;
  std::size_t mismatches = 0;
  std::string first;
  for (int mask = 0; mask < 16; ++mask) {
    const int tc = mask & 1, ti = (mask >> 1) & 1, dc = (mask >> 2) & 1, di = (mask >> 3) & 1;
    for (int rank = 1; rank <= 5; ++rank) {
      const double s = bk::score_search_result({tc, ti, dc, di, rank}, cfg);
      const double want = 30.0 * (tc + ti) + 20.0 * (dc + di) - rank / 10.0;
      o.check(std::abs(s - want) <= kScoreTol,
              "score mismatch mask=" + std::to_string(mask) + " rank=" + std::to_string(rank));

      // Admission through the real selection path: a single result at `rank`.
      bk::SearchResult r;
      r.user_handle = "u";
      r.country = bk::CountryCode("JP");
      r.interest = "tea";
      r.title = std::string("x") + (tc ? " japan" : "") + (ti ? " tea" : "");
      r.description = std::string("y") + (dc ? " japan" : "") + (di ? " tea" : "");
      r.url = "u";
      r.rank = rank;
      const bool admitted = !bk::select_search_bridges(std::vector{r}, "Japan",
                                                       bk::NGram::from_text("tea"), cfg)
                                 .empty();
      // "a title occurrence and both terms present"
      const bool title_hit = tc || ti;
      const bool both_terms = (tc || dc) && (ti || di);
      if (admitted != (title_hit && both_terms)) {
        if (mismatches++ == 0) {
          first = "tc=" + std::to_string(tc) + " ti=" + std::to_string(ti) +
                  " dc=" + std::to_string(dc) + " di=" + std::to_string(di) +
                  " rank=" + std::to_string(rank) + " score=" + fmt(s) +
                  (admitted ? " admitted" : " rejected");
        }
      }
    }
  }
  if (mismatches) {
    o.fail(std::to_string(mismatches) + " of 80 (combination, rank) cases disagree with "
           "'title occurrence and both terms present'; first: " + first);
  }
  return o;
}

// 2 ---------------------------------------------------------------------------

Outcome c02() {
  Outcome o;
  std::mt19937_64 rng(20140606);
  std::size_t mismatched = 0;
  for (int round = 0; round < 500; ++round) {
    const std::size_t alphabet = 1 + rng() % 10;
    const std::size_t docs_n = 1 + rng() % 4;
    std::vector<bk::oracle::Stream> streams(docs_n);
    std::vector<bk::TokenList> docs;
    std::size_t budget = 1 + rng() % 200;  // tokens over all streams
    for (std::size_t d = 0; d < docs_n; ++d) {
      const std::size_t len = d + 1 == docs_n ? budget : rng() % (budget + 1);
      budget -= len;
      for (std::size_t i = 0; i < len; ++i) streams[d].push_back("t" + std::to_string(rng() % alphabet));
      docs.push_back(streams[d]);
    }
    std::map<std::string, long long> got;
    for (const auto& [k, v] : bk::merge_ngram_counts(bk::count_ngrams(docs, 1),
                                                     bk::count_ngrams(docs, 2),
                                                     bk::count_ngrams(docs, 3))) {
      got[k.text()] = v;
    }
    if (got != bk::oracle::merged_counts(streams)) ++mismatched;
  }
  o.check(mismatched == 0, std::to_string(mismatched) + " of 500 streams mismatched");
  return o;
}

// 3 ---------------------------------------------------------------------------

Outcome c03() {
  Outcome o;
  for (int run = 0; run < 2; ++run) {
    bk::testing::TempDir dir("acc3");
    if (!pipeline_step("interests", dir.path())) {
      o.fail("interests command failed");
      return o;
    }
    for (const auto& u : kUsers) {
      const auto got = bk::read_file(dir.path() / "interests" / (u + ".tsv"));
      const auto want = bk::read_file(bk::testing::golden_dir() / "interests" / (u + ".tsv"));
      o.check(got == want, "run " + std::to_string(run + 1) + ": " + u + ".tsv differs from golden");
    }
  }
  return o;
}

// 4 ---------------------------------------------------------------------------

Outcome c04() {
  Outcome o;
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* jobs : {"1", "1", "8"}) {
    bk::testing::TempDir dir("acc4");
    if (!pipeline_step("interests", dir.path(), {"--jobs", jobs}) ||
        !pipeline_step("bridges", dir.path(), {"--jobs", jobs})) {
      o.fail(std::string("pipeline failed with --jobs ") + jobs);
      return o;
    }
    runs.push_back(snapshot(dir.path()));
  }
  o.check(runs[0] == runs[1], "two --jobs 1 runs differ");
  o.check(runs[0] == runs[2], "--jobs 1 and --jobs 8 differ");
  for (const auto& u : kUsers) {
    const auto it = runs[0].find("bridges/" + u + ".jsonl");
    o.check(it != runs[0].end() &&
                it->second == bk::read_file(bk::testing::golden_dir() / "bridges" / (u + ".jsonl")),
            u + ".jsonl differs from golden");
  }
  return o;
}

// 5 ---------------------------------------------------------------------------

Outcome c05() {
  Outcome o;
  const std::vector<std::string> filler = {"the", "island", "coast", "harbor", "old", "town",
                                           "river", "tea", "machine", "festival"};
  const std::vector<std::string> phrases = {"tea", "machine learning", "tea ceremony house"};
  std::mt19937_64 rng(5);
  std::size_t bad = 0, found = 0;
  for (int doc = 0; doc < 200; ++doc) {
    const bk::NGram phrase = bk::NGram::from_text(phrases[doc % phrases.size()]);
    const std::size_t units_n = 1 + rng() % 8;
    std::vector<std::string> units;
    for (std::size_t u = 0; u < units_n; ++u) {
      std::vector<std::string> words;
      const std::size_t len = rng() % 15;
      for (std::size_t k = 0; k < len; ++k) words.push_back(filler[rng() % filler.size()]);
      // Plant the phrase zero to two times, with varied case and punctuation.
      const std::size_t plants = rng() % 3;
      for (std::size_t p = 0; p < plants; ++p) {
        const std::size_t at = words.empty() ? 0 : rng() % (words.size() + 1);
        std::string text = phrase.text();
        if (rng() % 2) text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        if (rng() % 2) text += ",";
        words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), text);
      }
      std::string unit;
      for (const auto& w : words) unit += (unit.empty() ? "" : " ") + w;
      units.push_back(unit + (rng() % 2 ? "." : ""));
    }
    std::vector<std::string> normalized;
    for (const auto& u : units) normalized.push_back(bk::normalize_text(u));
    const auto got = bk::match_interest_snippet(units, phrase);
    const auto want = bk::oracle::earliest(normalized, phrase.text());
    if (got) ++found;
    if (got.has_value() != want.has_value() ||
        (got && (got->unit_index != want->unit || got->offset != want->offset))) {
      ++bad;
    }
  }
  o.check(bad == 0, std::to_string(bad) + " of 200 documents disagree with the linear scan");
  o.check(found > 100, "too few documents contained a planted phrase (" + std::to_string(found) + ")");
  return o;
}

// 6 ---------------------------------------------------------------------------

Outcome c06() {
  Outcome o;
  const auto data = bk::testing::data_dir();
  const auto g = bk::Gazetteer::load(data / "gazetteer.tsv", data / "countries.tsv");
  std::ifstream in(data / "gazetteer.tsv");
  std::size_t ambiguous = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = bk::split(line, '\t');
    if (f.size() != 3 || f[2] != "1") continue;
    ++ambiguous;
    const std::string alias = f[0];
    o.check(!bk::resolve_location(alias, g), "ambiguous '" + alias + "' resolved");
    o.check(!bk::resolve_location("Somewhere, " + alias, g), "ambiguous '" + alias + "' resolved as segment");
    o.check(bk::detect_country_mentions(alias, g).empty(), "ambiguous '" + alias + "' mentioned");
    o.check(bk::detect_country_mentions("off to " + alias + " soon", g).empty(),
            "ambiguous '" + alias + "' mentioned in a sentence");
  }
  o.check(ambiguous > 0, "no ambiguous aliases in the bundled gazetteer");
  o.check(bk::resolve_location("NYC, USA", g) == bk::CountryCode("US"), "'NYC, USA' did not resolve to US");
  o.check(!bk::resolve_location("CA", g), "'CA' resolved");
  return o;
}

// 7 ---------------------------------------------------------------------------

Outcome c07() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 50; ++n) {
    bk::PageViewStats stats;
    std::vector<std::pair<std::int64_t, std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      // Few distinct view counts so ties land on the boundary often.
      const std::string code{static_cast<char>('A' + (i * 7) % 26), static_cast<char>('A' + i / 26)};
      const std::int64_t views = static_cast<std::int64_t>(rng() % 4);
      stats.views[bk::CountryCode(code)] = views;
      rows.emplace_back(-views, code);
    }
    std::sort(rows.begin(), rows.end());
    const std::size_t top = (n + 2) / 3;
    std::set<std::string> want;
    for (std::size_t i = 0; i < top; ++i) want.insert(rows[i].second);

    const auto cls = bk::classify_countries(stats);
    std::set<std::string> got;
    for (const auto& [code, p] : cls) {
      if (p == bk::Popularity::well_known) got.insert(code.str());
    }
    o.check(got.size() == top, "N=" + std::to_string(n) + ": " + std::to_string(got.size()) +
                                   " well-known, expected " + std::to_string(top));
    o.check(got == want, "N=" + std::to_string(n) + ": boundary tie not broken by code");
  }
  return o;
}

// 8 ---------------------------------------------------------------------------

Outcome c08() {
  Outcome o;
  std::map<std::string, std::set<std::string>> home;
  for (const auto& u : kUsers) {
    const auto rec = bk::load_user_record(bk::testing::fixture_dir() / "corpus" / u);
    for (const auto& c : rec.home_countries) home[u].insert(c.str());
  }
  bk::testing::TempDir dir("acc8");
  if (!pipeline_step("interests", dir.path()) || !pipeline_step("bridges", dir.path())) {
    o.fail("pipeline failed");
    return o;
  }
  for (const std::string seed : {"42", "42", "1", "7", "123456789", "18446744073709551615"}) {
    if (!pipeline_step("plan", dir.path(), {"--seed", seed})) {
      o.fail("plan failed for seed " + seed);
      continue;
    }
    for (const auto& u : kUsers) {
      const auto j = nlohmann::json::parse(bk::read_file(dir.path() / "survey" / (u + ".json")));
      std::string lines;
      std::size_t wk = 0, lk = 0;
      for (const auto& p : j["pages"]) {
        const auto code = p["country"].get<std::string>();
        const auto cls = p["class"].get<std::string>();
        lines += code + " " + cls + " " + std::to_string(p["bridge_count"].get<std::size_t>()) + "\n";
        o.check(!home[u].count(code), u + " plan includes home country " + code);
        (cls == "well_known" ? wk : lk)++;
      }
      o.check(wk <= 3 && lk <= 4, u + " plan exceeds 3+4 (seed " + seed + ")");
      if (seed == "42") {
        o.check(lines == bk::read_file(bk::testing::golden_dir() / "plan" / (u + ".txt")),
                u + " plan differs from golden");
      }
    }
  }
  return o;
}

// 9 ---------------------------------------------------------------------------

Outcome c09() {
  Outcome o;
  using V = std::vector<double>;
  const struct {
    V x, y;
    double r;
  } cases[] = {{{1, 2, 3}, {2, 4, 6}, 1.0}, {{1, 2, 3}, {6, 4, 2}, -1.0}, {{1, 2, 3, 4}, {1, 3, 2, 4}, 0.8}};
  for (const auto& c : cases) {
    const double r = bk::pearson(c.x, c.y);
    o.check(std::abs(r - c.r) <= kPearsonTol, "pearson " + fmt(r, 12) + " != " + fmt(c.r));
  }

  const struct {
    V v;
    double mean, lo, hi;
  } cis[] = {
      {{5, 5, 5, 5}, 5, 5, 5},
      {{0, 10}, 5, 5 - 12.706205 * std::sqrt(50.0) / std::sqrt(2.0), 5 + 12.706205 * std::sqrt(50.0) / std::sqrt(2.0)},
      {{4, 6, 5, 5}, 5, 5 - 3.182446 * std::sqrt(2.0 / 3.0) / 2, 5 + 3.182446 * std::sqrt(2.0 / 3.0) / 2},
  };
  for (const auto& c : cis) {
    const auto m = bk::mean_ci(c.v);
    o.check(std::abs(m.mean - c.mean) <= kCiTol && std::abs(m.lo - c.lo) <= kCiTol &&
                std::abs(m.hi - c.hi) <= kCiTol,
            "mean_ci (" + fmt(m.mean) + ", " + fmt(m.lo) + ", " + fmt(m.hi) + ")");
  }

  // Coverage on a hand-counted bridge set: FR has two wikipedia users and one
  // tweet user, JP one of each kind, KE one wikitravel user.
  auto mk = [](const char* user, const char* code, bk::BridgeKind k) {
    bk::Bridge b;
    b.user_handle = user;
    b.country = bk::CountryCode(code);
    b.kind = k;
    return b;
  };
  const std::vector<bk::Bridge> bridges = {
      mk("a", "FR", bk::BridgeKind::wikipedia),    mk("b", "FR", bk::BridgeKind::wikipedia),
      mk("a", "FR", bk::BridgeKind::wikipedia),    mk("a", "FR", bk::BridgeKind::network_tweet),
      mk("c", "JP", bk::BridgeKind::wikipedia),    mk("d", "JP", bk::BridgeKind::network_tweet),
      mk("c", "KE", bk::BridgeKind::wikitravel),
  };
  const auto cov = bk::coverage_report(bridges);
  const std::vector<std::pair<std::string, std::size_t>> want_rows = {{"FR", 3}, {"JP", 2}, {"KE", 1}};
  o.check(cov.rows.size() == want_rows.size(), "coverage row count");
  for (std::size_t i = 0; i < std::min(cov.rows.size(), want_rows.size()); ++i) {
    o.check(cov.rows[i].country.str() == want_rows[i].first && cov.rows[i].total == want_rows[i].second,
            "coverage row " + std::to_string(i));
  }
  if (!cov.rows.empty()) {
    o.check(cov.rows[0].per_kind.at(bk::BridgeKind::wikipedia) == 2, "FR wikipedia users");
  }

  // Interest report on the 6-response fixture.
  const auto rows = bk::load_survey_responses(bk::testing::fixture_dir() / "responses.csv");
  const auto classes = bk::classify_countries(
      bk::load_page_views(bk::testing::fixture_dir() / "knowledge" / "pageviews.tsv"));
  const auto rep = bk::interest_report(rows, classes);
  o.check(rep.increase.size() == bk::expected::interest_cells().size(), "interest cell count");
  for (const auto& cell : bk::expected::interest_cells()) {
    const bk::KindClass key{*bk::parse_bridge_kind(cell.kind), *bk::parse_popularity(cell.cls)};
    const std::string name = std::string(cell.kind) + "/" + cell.cls;
    auto it = rep.increase.find(key);
    if (it == rep.increase.end()) {
      o.fail(name + " missing");
      continue;
    }
    const std::size_t n = cell.increases.size();
    double ss = 0;
    for (double v : cell.increases) ss += (v - cell.mean) * (v - cell.mean);
    const double half = bk::expected::t975(n - 1) * std::sqrt(ss / static_cast<double>(n - 1)) /
                        std::sqrt(static_cast<double>(n));
    o.check(it->second.n == n, name + " n");
    o.check(std::abs(it->second.mean - cell.mean) <= kCiTol, name + " mean " + fmt(it->second.mean));
    o.check(std::abs(it->second.lo - (cell.mean - half)) <= kCiTol, name + " ci_lo");
    o.check(std::abs(it->second.hi - (cell.mean + half)) <= kCiTol, name + " ci_hi");
    auto r = rep.initial_vs_increase.find(key);
    o.check(r != rep.initial_vs_increase.end() &&
                std::abs(r->second - bk::oracle::pearson(cell.initial, cell.increases)) <= kPearsonTol,
            name + " initial_vs_increase");
  }
  return o;
}

// 10 --------------------------------------------------------------------------

// Synthetic world: country i has views falling with i, and every source covers
// it (and every user's network touches it) with probability views/max.
Outcome c10() {
  Outcome o;
  const auto data = bk::testing::data_dir();
  const auto g = bk::Gazetteer::load(data / "gazetteer.tsv", data / "countries.tsv");

  std::vector<bk::CountryCode> codes;
  for (const auto& [code, name] : g.countries()) {
    if (g.lookup(bk::normalize_text(name)) == code) codes.push_back(code);
    if (codes.size() == 40) break;
  }
  if (codes.size() < 40) {
    o.fail("not enough countries with a resolvable canonical name");
    return o;
  }
  std::mt19937_64 rng(10);
  auto chance = [&](double p) { return static_cast<double>(rng() % 1000000) < p * 1e6; };
  const std::vector<std::string> vocab = {"chess", "surfing", "opera", "cycling", "pottery"};

  bk::KnowledgeStore::Contents contents;
  contents.countries = g.countries();
  std::map<bk::CountryCode, double> p;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto views = static_cast<std::int64_t>(100000 / (i + 1) + rng() % 500);
    contents.page_views.views[codes[i]] = views;
  }
  const double max_views = static_cast<double>(contents.page_views.views.at(codes[0]));
  for (const auto& c : codes) p[c] = static_cast<double>(contents.page_views.views.at(c)) / max_views;

  const std::size_t users_n = 30;
  std::vector<bk::UserRecord> users(users_n);
  std::vector<bk::InterestModel> models(users_n);
  for (std::size_t u = 0; u < users_n; ++u) {
    users[u].profile.handle = "user" + std::to_string(u);
    models[u].user_handle = users[u].profile.handle;
    models[u].interests.push_back(
        {bk::NGram::from_text(vocab[u % vocab.size()]), 5, bk::InterestOrigin::posts});
  }

  for (const auto& c : codes) {
    const std::string name = g.country_name(c);
    const double pc = p[c];
    bk::CountryDoc wiki{c, bk::UnitSource::wikipedia, {name + " is a country."}, "wiki/" + c.str()};
    bk::CountryDoc travel{c, bk::UnitSource::wikitravel, {}, "travel/" + c.str()};
    for (const auto& w : vocab) {
      if (chance(pc)) wiki.units.push_back(name + " has a " + w + " scene.");
      if (chance(pc)) travel.units.push_back("Try " + w + " while visiting.");
    }
    contents.docs.push_back(wiki);
    if (!travel.units.empty()) contents.docs.push_back(travel);
    if (chance(pc)) {
      contents.docs.push_back({c, bk::UnitSource::facts, {name + " has a long coastline."}, "facts/" + c.str()});
    }
    for (const auto& w : vocab) {
      if (chance(pc)) {
        contents.people.push_back({"P " + c.str() + " " + w, c, "A famous " + w + " player.",
                                   static_cast<std::int64_t>(rng() % 1000), "people/" + c.str() + w});
      }
    }
    for (std::size_t u = 0; u < users_n; ++u) {
      const auto& interest = vocab[u % vocab.size()];
      if (chance(pc)) {
        contents.search.push_back({users[u].profile.handle, c, interest, name + " " + interest,
                                   "A guide to " + interest + " in " + name, "s/" + c.str(), 1});
      }
      if (chance(pc)) {
        bk::Contact contact;
        contact.profile.handle = "friend-" + c.str() + "-" + std::to_string(u);
        contact.profile.screen_name = contact.profile.handle;
        contact.profile.location = name;
        contact.is_reciprocal = true;
        users[u].contacts.push_back(contact);
      }
      if (chance(pc)) {
        bk::Contact contact;
        contact.profile.handle = "traveler-" + c.str() + "-" + std::to_string(u);
        contact.is_reciprocal = true;
        contact.posts.push_back({"post-" + c.str() + "-" + std::to_string(u), contact.profile.handle,
                                 "Just got back from " + name + "!", {}});
        users[u].contacts.push_back(contact);
      }
    }
  }

  const bk::KnowledgeStore store(std::move(contents));
  const bk::PipelineConfig cfg;
  std::vector<bk::Bridge> all;
  for (std::size_t u = 0; u < users_n; ++u) {
    for (const auto& c : codes) {
      auto set = bk::build_bridges(users[u], c, store, models[u], cfg, g);
      all.insert(all.end(), set.selected.begin(), set.selected.end());
    }
  }
  bk::PageViewStats stats;
  for (const auto& c : codes) stats.views[c] = store.page_views().views.at(c);
  bk::Warnings w;
  const auto r = bk::correlation_report(bk::coverage_report(all), stats, &w);
  for (auto kind : bk::kAllBridgeKinds) {
    auto it = r.find(kind);
    if (it == r.end()) {
      o.fail(std::string(bk::to_string(kind)) + ": no correlation");
      continue;
    }
    o.check(it->second > 0, std::string(bk::to_string(kind)) + ": r = " + fmt(it->second));
  }
  if (o.ok) {
    std::string rs;
    for (const auto& [k, v] : r) rs += std::string(bk::to_string(k)) + "=" + fmt(v, 3) + " ";
    o.detail = rs;
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> fn;
  double budget_ms;  // 0 = none
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "search score and filter", c01, kC1BudgetMs},
      {2, "n-gram merge oracle", c02, kC2BudgetMs},
      {3, "interest pipeline golden", c03, 0},
      {4, "bridge determinism", c04, 0},
      {5, "earliest-occurrence property", c05, 0},
      {6, "gazetteer precision", c06, 0},
      {7, "popularity classification", c07, 0},
      {8, "survey plan determinism", c08, 0},
      {9, "statistics oracle", c09, 0},
      {10, "coverage-shape sanity", c10, kC10BudgetMs},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
      return 2;
    }
  }
  bool all_ok = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    ran = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_ms > 0 && ms > c.budget_ms) {
      o.fail("runtime " + fmt(ms, 4) + " ms over budget " + fmt(c.budget_ms, 4) + " ms");
    }
    all_ok = all_ok && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " C" << std::setw(2) << std::setfill('0') << c.id
              << std::setfill(' ') << " " << c.name << " (" << std::fixed << std::setprecision(1)
              << ms << " ms)" << std::defaultfloat;
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << '\n';
  }
  if (!ran) {
    std::cerr << "no such criterion: " << only << '\n';
    return 2;
  }
  return all_ok ? 0 : 1;
}
