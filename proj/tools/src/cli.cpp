#include "bridgekit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "bridgekit/bridge_engine.hpp"
#include "bridgekit/corpus_io.hpp"
#include "bridgekit/evaluation.hpp"
#include "bridgekit/gazetteer.hpp"
#include "bridgekit/io.hpp"
#include "bridgekit/knowledge_store.hpp"
#include "bridgekit/survey_planner.hpp"

#ifndef BRIDGEKIT_INSTALLED_DATA_DIR
#define BRIDGEKIT_INSTALLED_DATA_DIR "data"
#endif
#ifndef BRIDGEKIT_SOURCE_DATA_DIR
#define BRIDGEKIT_SOURCE_DATA_DIR "data"
#endif

namespace bridgekit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path RunConfig::gazetteer_path() const {
  return gazetteer.empty() ? data_dir / "gazetteer.tsv" : gazetteer;
}

fs::path RunConfig::countries_path() const {
  return countries.empty() ? data_dir / "countries.tsv" : countries;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("invalid boolean '" + value + "' for " + key);
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                   const fs::path& base) {
  auto path = [&] { return value.empty() ? fs::path{} : (base / value).lexically_normal(); };
  auto& p = cfg.pipeline;
  if (key == "corpus_dir") cfg.corpus_dir = path();
  else if (key == "knowledge_dir") cfg.knowledge_dir = path();
  else if (key == "data_dir") cfg.data_dir = path();
  else if (key == "gazetteer") cfg.gazetteer = path();
  else if (key == "countries") cfg.countries = path();
  else if (key == "labels") cfg.labels = path();
  else if (key == "responses") cfg.responses = path();
  else if (key == "out_dir") cfg.out_dir = path();
  else if (key == "frequency_threshold") p.frequency_threshold = parse_number<std::int64_t>(key, value);
  else if (key == "post_cap") p.post_cap = parse_number<std::size_t>(key, value);
  else if (key == "contact_cap") p.contact_cap = parse_number<std::size_t>(key, value);
  else if (key == "alpha") p.alpha = parse_number<double>(key, value);
  else if (key == "beta") p.beta = parse_number<double>(key, value);
  else if (key == "gamma") p.gamma = parse_number<double>(key, value);
  else if (key == "score_cutoff") p.score_cutoff = parse_number<double>(key, value);
  else if (key == "top_k") p.top_k = parse_number<int>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "jobs") cfg.jobs = parse_number<unsigned>(key, value);
  else if (key == "verbosity") cfg.verbosity = parse_number<int>(key, value);
  else if (key == "exclude_glitches") cfg.exclude_glitches = parse_bool(key, value);
  else if (key == "count_mode") {
    if (value == "kinds") cfg.count_mode = CountMode::kinds;
    else if (value == "candidates") cfg.count_mode = CountMode::candidates;
    else throw UsageError("count_mode must be kinds or candidates");
  } else {
    throw UsageError("unknown configuration key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  const fs::path base = fs::absolute(path).parent_path();
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(row) + ": expected key=value");
    }
    apply_setting(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), base);
  }
}

std::vector<std::string> list_users(const fs::path& corpus_dir) {
  if (!fs::is_directory(corpus_dir)) {
    throw DataError(corpus_dir.string(), 0, "", "corpus directory not found");
  }
  std::vector<std::string> users;
  for (const auto& e : fs::directory_iterator(corpus_dir)) {
    if (e.is_directory()) users.push_back(e.path().filename().string());
  }
  std::sort(users.begin(), users.end());
  return users;
}

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. fn must not throw.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, jobs), n);
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
}

struct UserOutcome {
  Warnings warnings;
  std::string error;
};

// Runs `body` for every user in parallel and merges warnings in user order.
template <class Body>
std::size_t for_each_user(const std::vector<std::string>& users, unsigned jobs, Warnings& all,
                          std::ostream& log, Body body) {
  std::vector<UserOutcome> outcomes(users.size());
  parallel_for(users.size(), jobs, [&](std::size_t i) {
    try {
      body(i, users[i], outcomes[i].warnings);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });
  std::size_t failures = 0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    for (auto& w : outcomes[i].warnings) {
      if (w.user.empty()) w.user = users[i];
      all.push_back(std::move(w));
    }
    if (!outcomes[i].error.empty()) {
      ++failures;
      log << "error: " << users[i] << ": " << outcomes[i].error << '\n';
      all.push_back({"user_failed", users[i], "", outcomes[i].error});
    }
  }
  return failures;
}

// Replaces this command's entries in out/warnings.jsonl, keeping other commands'.
void write_warnings(const fs::path& out_dir, const std::string& command, Warnings warnings) {
  const fs::path path = out_dir / "warnings.jsonl";
  std::string kept;
  if (fs::exists(path)) {
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_object() && obj.value("command", "") == command) continue;
      kept += line + '\n';
    }
  }
  std::stable_sort(warnings.begin(), warnings.end(), [](const Warning& a, const Warning& b) {
    return std::tie(a.user, a.country) < std::tie(b.user, b.country);
  });
  for (const auto& w : warnings) {
    OrderedJson j;
    j["command"] = command;
    j["code"] = w.code;
    j["user"] = w.user;
    j["country"] = w.country;
    j["message"] = w.message;
    kept += j.dump() + '\n';
  }
  write_file_atomic(path, kept);
}

std::vector<AnnotationLabel> maybe_labels(const RunConfig& cfg) {
  if (cfg.labels.empty()) return {};
  return load_labels(cfg.labels);
}

void check_handle(const UserRecord& rec, const std::string& user) {
  if (rec.profile.handle != user) {
    throw DataError("profile handle '" + rec.profile.handle + "' does not match directory '" +
                    user + "'");
  }
}

int finish(const RunConfig& cfg, const std::string& command, Warnings warnings,
           std::size_t users, std::size_t failures, std::ostream& log) {
  write_warnings(cfg.out_dir, command, std::move(warnings));
  if (cfg.verbosity > 0 || failures > 0) {
    log << command << ": " << users << " user(s), " << failures << " failed\n";
  }
  return failures > 0 ? kExitData : kExitOk;
}

// Installed data wins; a build tree falls back to the source checkout.
fs::path default_data_dir() {
  const fs::path installed = BRIDGEKIT_INSTALLED_DATA_DIR;
  if (fs::is_directory(installed / "stopwords")) return installed;
  return BRIDGEKIT_SOURCE_DATA_DIR;
}

std::uint64_t user_seed(std::uint64_t seed, const std::string& user) {
  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a
  for (unsigned char c : user) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

std::vector<std::string> list_stems(const fs::path& dir, std::string_view ext) {
  if (!fs::is_directory(dir)) throw DataError(dir.string(), 0, "", "directory not found");
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) {
      out.push_back(e.path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int cmd_interests(const RunConfig& cfg, std::ostream& log) {
  const Gazetteer gaz = Gazetteer::load(cfg.gazetteer_path(), cfg.countries_path());
  const TextResources res = TextResources::load(cfg.data_dir);
  const auto labels = maybe_labels(cfg);
  const auto users = list_users(cfg.corpus_dir);
  Warnings warnings;
  if (users.empty()) warnings.push_back({"empty_corpus", "", "", "no user directories found"});

  const std::size_t failures =
      for_each_user(users, cfg.jobs, warnings, log, [&](std::size_t, const std::string& user, Warnings& w) {
        const UserRecord rec =
            load_user_record(cfg.corpus_dir / user, cfg.pipeline.load_options(), &w);
        check_handle(rec, user);
        for (const auto& home : rec.home_countries) {
          if (!gaz.has_country(home)) {
            throw DataError("home country " + home.str() + " is not in the country table");
          }
        }
        InterestModel model = build_interest_model(rec, cfg.pipeline, res.stoplists, res.lexicon);
        model = apply_interest_labels(std::move(model), labels);
        if (model.interests.empty()) w.push_back({"empty_model", user, "", "no interests found"});
        write_file_atomic(cfg.out_dir / "interests" / (user + ".tsv"), interests_tsv(model));
      });
  return finish(cfg, "interests", std::move(warnings), users.size(), failures, log);
}

int cmd_bridges(const RunConfig& cfg, std::ostream& log) {
  const Gazetteer gaz = Gazetteer::load(cfg.gazetteer_path(), cfg.countries_path());
  Warnings warnings;
  const KnowledgeStore store = KnowledgeStore::load(cfg.knowledge_dir, &warnings);
  const auto labels = maybe_labels(cfg);
  const auto users = list_users(cfg.corpus_dir);
  if (users.empty()) warnings.push_back({"empty_corpus", "", "", "no user directories found"});

  const std::size_t failures =
      for_each_user(users, cfg.jobs, warnings, log, [&](std::size_t, const std::string& user, Warnings& w) {
        const UserRecord rec =
            load_user_record(cfg.corpus_dir / user, cfg.pipeline.load_options(), &w);
        check_handle(rec, user);
        const fs::path interests = cfg.out_dir / "interests" / (user + ".tsv");
        if (!fs::exists(interests)) {
          throw DataError(interests.string(), 0, "", "missing interests; run `interests` first");
        }
        const InterestModel model = load_interests(interests, user);

        for (const auto& c : rec.contacts) {
          if (!c.is_reciprocal || c.resolved_country || c.profile.location.empty()) continue;
          if (resolve_location(c.profile.location, gaz)) continue;
          for (const auto& seg : split(c.profile.location, ',')) {
            if (gaz.is_ambiguous(normalize_text(seg))) {
              w.push_back({"ambiguous_location", user, "",
                           "contact " + c.profile.handle + ": '" + c.profile.location + "'"});
              break;
            }
          }
        }

        std::vector<Bridge> selected, candidates;
        for (const auto& [code, name] : store.countries()) {
          if (rec.home_countries.count(code)) continue;
          BridgeSet set = build_bridges(rec, code, store, model, cfg.pipeline, gaz, labels);
          selected.insert(selected.end(), set.selected.begin(), set.selected.end());
          candidates.insert(candidates.end(), set.candidates.begin(), set.candidates.end());
        }
        if (selected.empty()) w.push_back({"no_bridges", user, "", "no country could be bridged"});
        write_file_atomic(cfg.out_dir / "bridges" / (user + ".jsonl"), bridges_jsonl(selected));
        write_file_atomic(cfg.out_dir / "candidates" / (user + ".jsonl"),
                          bridges_jsonl(candidates));
      });
  return finish(cfg, "bridges", std::move(warnings), users.size(), failures, log);
}

int cmd_plan(const RunConfig& cfg, std::ostream& log) {
  if (!cfg.seed) throw UsageError("plan requires --seed");
  const PageViewStats stats = load_page_views(cfg.knowledge_dir / "pageviews.tsv");
  const CountryClasses classes = classify_countries(stats);
  const auto names = load_country_table(cfg.knowledge_dir / "countries.tsv");
  const fs::path source_dir =
      cfg.out_dir / (cfg.count_mode == CountMode::kinds ? "bridges" : "candidates");
  const auto users = list_stems(source_dir, ".jsonl");
  Warnings warnings;
  if (users.empty()) warnings.push_back({"empty_corpus", "", "", "no bridge files found"});

  PlanOptions options;
  options.count_mode = cfg.count_mode;
  const std::size_t failures =
      for_each_user(users, cfg.jobs, warnings, log, [&](std::size_t, const std::string& user, Warnings& w) {
        std::map<CountryCode, std::vector<Bridge>> by_country;
        for (auto& b : load_bridges(source_dir / (user + ".jsonl"))) {
          if (b.user_handle != user) {
            throw DataError("bridge for user '" + b.user_handle + "' in " + user + ".jsonl");
          }
          by_country[b.country].push_back(std::move(b));
        }
        std::set<CountryCode> home;
        if (fs::is_directory(cfg.corpus_dir / user)) {
          home = load_user_record(cfg.corpus_dir / user, cfg.pipeline.load_options()).home_countries;
        }
        const SurveyPlan plan = plan_survey(user, by_country, classes, user_seed(*cfg.seed, user),
                                            options, home, &w);
        write_file_atomic(cfg.out_dir / "survey" / (user + ".json"),
                          emit_survey(plan, names).dump(2) + "\n");
      });
  return finish(cfg, "plan", std::move(warnings), users.size(), failures, log);
}

int cmd_report(const RunConfig& cfg, std::ostream& log) {
  const PageViewStats stats = load_page_views(cfg.knowledge_dir / "pageviews.tsv");
  const CountryClasses classes = classify_countries(stats);
  const fs::path bridge_dir = cfg.out_dir / "bridges";
  const auto users = list_stems(bridge_dir, ".jsonl");
  Warnings warnings;

  std::vector<CoverageAccumulator> partial(users.size());
  const std::size_t failures =
      for_each_user(users, cfg.jobs, warnings, log, [&](std::size_t i, const std::string& user, Warnings&) {
        partial[i].add(load_bridges(bridge_dir / (user + ".jsonl")));
      });
  CoverageAccumulator coverage;
  for (const auto& p : partial) coverage.merge(p);

  Report report;
  report.coverage = coverage.table();
  report.correlations = correlation_report(report.coverage, stats, &warnings);
  if (cfg.responses.empty()) {
    warnings.push_back({"no_responses", "", "", "no survey responses configured"});
  } else {
    const auto responses = load_survey_responses(cfg.responses);
    report.interest = interest_report(responses, classes, {cfg.exclude_glitches}, &warnings);
  }
  write_file_atomic(cfg.out_dir / "report.json", report_json(report).dump(2) + "\n");
  write_file_atomic(cfg.out_dir / "report.csv", report_csv(report));
  return finish(cfg, "report", std::move(warnings), users.size(), failures, log);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build personalized country bridges from social media profiles."};
  app.name(args.empty() ? "bridgekit" : args.front());
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<unsigned> jobs;
  std::vector<std::string> settings;
  bool verbose = false;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--seed", seed, "Seed for survey planning (required by plan)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--set", settings, "Override one configuration key (key=value)");
  app.add_flag("-v,--verbose", verbose, "Print a summary line per command");

  auto* interests = app.add_subcommand("interests", "Extract interest models for every user");
  auto* bridges = app.add_subcommand("bridges", "Generate bridges for every user and country");
  auto* plan = app.add_subcommand("plan", "Select survey countries per user");
  auto* report = app.add_subcommand("report", "Coverage, correlation and interest statistics");
  for (auto* sub : {interests, bridges, plan, report}) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    cfg.data_dir = default_data_dir();
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
      apply_setting(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), fs::current_path());
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.seed = seed;
    if (jobs) cfg.jobs = *jobs;
    if (verbose) cfg.verbosity = std::max(cfg.verbosity, 1);
    if (cfg.jobs == 0) throw UsageError("jobs must be at least 1");
    try {
      cfg.pipeline.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }

    if (interests->parsed()) return cmd_interests(cfg, err);
    if (bridges->parsed()) return cmd_bridges(cfg, err);
    if (plan->parsed()) return cmd_plan(cfg, err);
    return cmd_report(cfg, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace bridgekit::cli
