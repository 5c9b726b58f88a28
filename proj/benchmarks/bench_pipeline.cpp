#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "bridgekit/bridge_engine.hpp"
#include "bridgekit/gazetteer.hpp"
#include "bridgekit/interest_model.hpp"
#include "bridgekit/text_pipeline.hpp"

namespace bk = bridgekit;

namespace {

const std::vector<std::string> kWords = {
    "triathlon", "training", "today",  "the",     "robotics", "club", "machine", "learning",
    "coffee",    "with",     "friends", "in",     "Zagreb",   "new",  "york",    "season"};

std::vector<std::string> make_posts(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> posts;
  for (std::size_t i = 0; i < n; ++i) {
    std::string p;
    const std::size_t len = 5 + rng() % 15;
    for (std::size_t k = 0; k < len; ++k) p += kWords[rng() % kWords.size()] + " ";
    if (rng() % 4 == 0) p += "http://example.com/x #tag @someone";
    posts.push_back(p);
  }
  return posts;
}

void BM_NormalizeText(benchmark::State& state) {
  const auto posts = make_posts(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    for (const auto& p : posts) benchmark::DoNotOptimize(bk::normalize_text(p));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NormalizeText)->Arg(100)->Arg(3200);

void BM_CountAndMerge(benchmark::State& state) {
  std::vector<bk::TokenList> docs;
  for (const auto& p : make_posts(static_cast<std::size_t>(state.range(0)), 2)) {
    docs.push_back(bk::tokenize(bk::normalize_text(p)));
  }
  for (auto _ : state) {
    auto merged = bk::merge_ngram_counts(bk::count_ngrams(docs, 1), bk::count_ngrams(docs, 2),
                                         bk::count_ngrams(docs, 3));
    benchmark::DoNotOptimize(merged);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountAndMerge)->Arg(100)->Arg(3200);

void BM_InterestModel(benchmark::State& state) {
  static const auto res = bk::TextResources::load(BRIDGEKIT_BENCH_DATA_DIR);
  bk::UserRecord user;
  user.profile.handle = "bench";
  user.profile.description = "Triathlon coach and robotics tinkerer";
  int id = 0;
  for (auto& p : make_posts(static_cast<std::size_t>(state.range(0)), 3)) {
    user.posts.push_back({std::to_string(id++), "bench", std::move(p), {}});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::build_interest_model(user, {}, res.stoplists, res.lexicon));
  }
}
BENCHMARK(BM_InterestModel)->Arg(3200)->Unit(benchmark::kMillisecond);

void BM_SnippetMatch(benchmark::State& state) {
  std::vector<bk::TokenizedText> units;
  for (const auto& p : make_posts(static_cast<std::size_t>(state.range(0)), 4)) {
    units.push_back(bk::tokenize_with_offsets(p));
  }
  const auto phrase = bk::NGram::from_text("machine learning");
  for (auto _ : state) benchmark::DoNotOptimize(bk::match_interest_snippet(units, phrase));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SnippetMatch)->Arg(1000)->Arg(20000);

void BM_CountryMentions(benchmark::State& state) {
  static const auto g = bk::Gazetteer::load(std::string(BRIDGEKIT_BENCH_DATA_DIR) + "/gazetteer.tsv",
                                            std::string(BRIDGEKIT_BENCH_DATA_DIR) + "/countries.tsv");
  const auto posts = make_posts(1000, 5);
  for (auto _ : state) {
    for (const auto& p : posts) benchmark::DoNotOptimize(bk::detect_country_mentions(p, g));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_CountryMentions);

}  // namespace

BENCHMARK_MAIN();
