#include <gtest/gtest.h>

#include <sstream>

#include "bridgekit/gazetteer.hpp"
#include "test_support.hpp"

namespace bridgekit {
namespace {

const Gazetteer& bundled() {
  static const Gazetteer g = Gazetteer::load(testing::data_dir() / "gazetteer.tsv",
                                             testing::data_dir() / "countries.tsv");
  return g;
}

std::set<CountryCode> codes(std::initializer_list<const char*> cs) {
  std::set<CountryCode> out;
  for (auto c : cs) out.emplace(c);
  return out;
}

TEST(Gazetteer, BundledTableLoads) {
  const auto& g = bundled();
  EXPECT_GE(g.countries().size(), 240u);
  EXPECT_EQ(g.country_name(CountryCode("US")), "United States");
  EXPECT_TRUE(g.is_ambiguous("ca"));
  EXPECT_FALSE(g.lookup("ca"));
  EXPECT_EQ(g.lookup("croatia"), CountryCode("HR"));
}

TEST(ResolveLocation, Examples) {
  const auto& g = bundled();
  EXPECT_EQ(resolve_location("NYC, USA", g), CountryCode("US"));
  EXPECT_FALSE(resolve_location("", g));
  EXPECT_FALSE(resolve_location("CA", g));
  EXPECT_EQ(resolve_location("Zagreb, Croatia", g), CountryCode("HR"));
  EXPECT_EQ(resolve_location("Zagreb", g), CountryCode("HR"));
  EXPECT_FALSE(resolve_location("Atlanta, Georgia", g));
  // Right-to-left: the trailing segment wins.
  EXPECT_EQ(resolve_location("Paris, Texas, USA", g), CountryCode("US"));
  EXPECT_FALSE(resolve_location("somewhere over the rainbow", g));
}

TEST(Mentions, Examples) {
  const auto& g = bundled();
  EXPECT_EQ(detect_country_mentions("150,000 Allied troops landed in Normandy", g), codes({"FR"}));
  EXPECT_TRUE(detect_country_mentions("hello world", g).empty());
  // Known false positive: "new york" wins the longest match in a food phrase.
  EXPECT_EQ(detect_country_mentions("new york steak for dinner", g), codes({"US"}));
  EXPECT_EQ(detect_country_mentions("Croatia beat Brazil", g), codes({"BR", "HR"}));
}

TEST(Mentions, LongestMatchConsumesShorterAlias) {
  std::istringstream countries("US\tUnited States\nGB\tUnited Kingdom\n");
  std::istringstream gaz("york\tGB\t0\nnew york\tUS\t0\n");
  const Gazetteer g = Gazetteer::parse(gaz, countries);
  EXPECT_EQ(detect_country_mentions("I love New York", g), codes({"US"}));
  EXPECT_EQ(detect_country_mentions("I love York", g), codes({"GB"}));
}

TEST(Mentions, AmbiguousAliasConsumesButNeverFires) {
  std::istringstream countries("US\tUnited States\nGE\tGeorgia\n");
  std::istringstream gaz("georgia\tUS\t1\ngeorgia\tGE\t1\natlanta\tUS\t0\n");
  const Gazetteer g = Gazetteer::parse(gaz, countries);
  EXPECT_TRUE(detect_country_mentions("Georgia on my mind", g).empty());
  EXPECT_EQ(detect_country_mentions("Atlanta, Georgia", g), codes({"US"}));
}

TEST(Gazetteer, InvalidTablesAreRejected) {
  {
    std::istringstream countries("US\tUnited States\n");
    std::istringstream gaz("x\tZZ\t0\n");
    EXPECT_THROW(Gazetteer::parse(gaz, countries), DataError);
  }
  {
    std::istringstream countries("US\tUnited States\nCA\tCanada\n");
    std::istringstream gaz("ca\tUS\t1\nca\tCA\t0\n");
    EXPECT_THROW(Gazetteer::parse(gaz, countries), DataError);
  }
  {
    std::istringstream countries("us\tbad\n");
    std::istringstream gaz("");
    EXPECT_THROW(Gazetteer::parse(gaz, countries), DataError);
  }
}

TEST(Gazetteer, AmbiguousAliasesNeverResolveAnywhere) {
  const auto& g = bundled();
  const std::vector<std::string> ambiguous = {"ca", "georgia", "korea", "jordan", "congo",
                                              "guinea", "victoria", "kingston"};
  for (const auto& a : ambiguous) {
    ASSERT_TRUE(g.is_ambiguous(a)) << a;
    EXPECT_FALSE(resolve_location(a, g)) << a;
    EXPECT_FALSE(resolve_location("Somewhere, " + a, g)) << a;
    EXPECT_TRUE(detect_country_mentions("we flew to " + a + " today", g).empty()) << a;
  }
}

TEST(Gazetteer, MentionsAreSubsetOfAliasCountries) {
  const auto& g = bundled();
  const std::string text = "From Zagreb to Osaka via Doha and the UK, then Normandy";
  const auto found = detect_country_mentions(text, g);
  EXPECT_EQ(found, codes({"FR", "GB", "HR", "JP", "QA"}));
  EXPECT_EQ(detect_country_mentions(text, g), found);
}

}  // namespace
}  // namespace bridgekit
