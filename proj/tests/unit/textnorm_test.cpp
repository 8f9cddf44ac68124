#include "corpusforge/textnorm.hpp"

#include <random>

#include <gtest/gtest.h>

#include "corpusforge/error.hpp"
#include "fixtures.hpp"

namespace corpusforge {
namespace {

struct Golden {
  const char* raw;
  const char* spoken;
};

// Readings fixed by the rule set; changing one is a behavior change.
constexpr Golden kGolden[] = {
    {"$50", "fifty dollars"},
    {"$20.45", "twenty dollars forty five cents"},
    {"50%", "fifty percent"},
    {"21st", "twenty first"},
    {"156", "one hundred fifty six"},
    {"2022", "two thousand twenty two"},
    {"4680", "four six eight zero"},
    {"401k", "four o one k"},
    {"ad&d", "a d n d"},
    {"HELLO", "hello"},
    {"22", "twenty two"},
    {"I owe $20.45", "i owe twenty dollars forty five cents"},
    {"My 401k plan", "my four o one k plan"},
    {"AD&D coverage", "a d n d coverage"},
    {"Carla Dr, Athens", "carla drive athens"},
    {"Dr Pepper", "doctor pepper"},
    {"see Dr Smith at 12 Main St.", "see doctor smith at twelve main street"},
    {"the St Mary hospital", "the saint mary hospital"},
    {"123 Main St", "one hundred twenty three main street"},
    {"In 2022 we paid", "in two thousand twenty two we paid"},
    {"Call 4680 now", "call four six eight zero now"},
    {"It was the 1990s", "it was the nineteen nineties"},
    {"She came 1st and he came 22nd", "she came first and he came twenty second"},
    {"It's $1,250.00 total", "it's one thousand two hundred fifty dollars total"},
    {"$5", "five dollars"},
    {"$1.01", "one dollar one cent"},
    {"I paid $0.99", "i paid ninety nine cents"},
    {"COVID-19 update", "covid nineteen update"},
    {"the 3rd of May 1995", "the third of may nineteen ninety five"},
    {"2005 was good", "two thousand five was good"},
    {"account 007", "account zero zero seven"},
    {"Hello,   World!!", "hello world"},
    {"café résumé", "cafe resume"},
    {"e-mail me", "e mail me"},
    {"pages 10-20", "pages ten twenty"},
    {"mr jones and mrs smith", "mister jones and missus smith"},
    {"1,000,000 people", "one million people"},
    {"10.5 miles", "ten point five miles"},
    {"", ""},
    {"  \t ", ""},
};

TEST(Normalize, GoldenSuite) {
  const Normalizer norm;
  for (const auto& g : kGolden) {
    EXPECT_EQ(norm(g.raw).text, g.spoken) << "input: " << g.raw;
  }
}

TEST(Normalize, FreeFunctionMatchesNormalizer) {
  const NormRules rules = NormRules::defaults();
  EXPECT_EQ(normalize("$20.45", rules).text, "twenty dollars forty five cents");
}

TEST(Normalize, SpecialTermsBeatNumericRules) {
  const NormRules rules = NormRules::defaults();
  const Normalizer norm(rules);
  for (const auto& [raw, spoken] : rules.special_terms) {
    EXPECT_EQ(norm(raw).text, spoken) << raw;
    EXPECT_EQ(norm("my " + raw + " form").text, "my " + spoken + " form") << raw;
  }
}

TEST(Normalize, FuzzKeepsInvariants) {
  const Normalizer norm;
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    const std::string raw = fixtures::random_text(rng);
    NormalizedText once;
    ASSERT_NO_THROW(once = norm(raw)) << raw;
    ASSERT_TRUE(is_normalized(once.text)) << raw << " -> " << once.text;
    EXPECT_EQ(norm(once.text), once) << raw;
  }
}

TEST(Normalize, DropsApostropheWhenConfigured) {
  NormRules rules = NormRules::defaults();
  rules.keep_apostrophe = false;
  EXPECT_EQ(normalize("It's Bob's", rules).text, "its bobs");
}

TEST(IsNormalized, Alphabet) {
  EXPECT_TRUE(is_normalized(""));
  EXPECT_TRUE(is_normalized("it's fine"));
  EXPECT_FALSE(is_normalized("it's fine", false));
  EXPECT_FALSE(is_normalized(" lead"));
  EXPECT_FALSE(is_normalized("trail "));
  EXPECT_FALSE(is_normalized("two  spaces"));
  EXPECT_FALSE(is_normalized("Upper"));
  EXPECT_FALSE(is_normalized("digit9"));
}

TEST(Normalize, Warnings) {
  const Normalizer norm;
  std::vector<NormWarning> warnings;
  EXPECT_EQ(norm("snow \xE2\x98\x83 man", &warnings).text, "snow man");
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].kind, "unknown_glyph");
  EXPECT_EQ(warnings[0].token, "\xE2\x98\x83");

  warnings.clear();
  EXPECT_EQ(norm("the 22th", &warnings).text, "the twenty second");
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].kind, "ordinal_suffix");
  EXPECT_EQ(warnings[0].token, "22th");
  EXPECT_EQ(warnings[0].to_json()["kind"], "ordinal_suffix");

  warnings.clear();
  EXPECT_EQ(norm("ask dr", &warnings).text, "ask doctor");
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].kind, "ambiguous_abbreviation");

  warnings.clear();
  norm("bad \xFF byte", &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].kind, "invalid_utf8");

  warnings.clear();
  EXPECT_EQ(norm("plain words", &warnings).text, "plain words");
  EXPECT_TRUE(warnings.empty());
}

TEST(NormRules, JsonOverlaysDefaults) {
  const auto rules = NormRules::from_json(nlohmann::json::parse(R"({
    "special_terms": {"K9": "k nine", "w2": "w dash two"},
    "abbreviations": {"bldg": "building", "ct": {"street": "court", "title": "count"}},
    "year_range": [1900, 2100]
  })"));
  const Normalizer norm(rules);
  EXPECT_EQ(norm("my k9 unit").text, "my k nine unit");
  EXPECT_EQ(norm("w2").text, "w dash two");
  EXPECT_EQ(norm("401k").text, "four o one k");
  EXPECT_EQ(norm("bldg 5").text, "building five");
  EXPECT_EQ(norm("1905").text, "nineteen oh five");
  EXPECT_EQ(rules.year_range.high, 2100);
}

TEST(NormRules, ReplaceDefaults) {
  const auto rules = NormRules::from_json(
      nlohmann::json::parse(R"({"replace_defaults": true, "special_terms": [["w2", "w two"]]})"));
  ASSERT_EQ(rules.special_terms.size(), 1u);
  EXPECT_TRUE(rules.abbreviations.empty());
  EXPECT_EQ(Normalizer(rules)("401k").text, "four hundred one k");
}

TEST(NormRules, RejectsBadConfig) {
  auto field_of = [](const char* text) {
    try {
      NormRules::from_json(nlohmann::json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(field_of(R"({"bogus": 1})"), "bogus");
  EXPECT_EQ(field_of(R"({"special_terms": {"x1": "X One"}})"), "special_terms.x1");
  EXPECT_EQ(field_of(R"({"special_terms": {"x1": 3}})"), "special_terms.x1");
  EXPECT_EQ(field_of(R"({"year_range": [2030, 1930]})"), "year_range");
  EXPECT_EQ(field_of(R"({"year_range": [1, 2]})"), "year_range");
  EXPECT_EQ(field_of(R"({"abbreviations": {"ct": {"street": "court"}}})"), "abbreviations.ct");
  EXPECT_EQ(field_of(R"({"abbreviations": {"ct": {"town": "x"}}})"), "abbreviations.ct.town");
  EXPECT_EQ(field_of(R"({"keep_apostrophe": "yes"})"), "keep_apostrophe");
  EXPECT_EQ(field_of(R"([1])"), "rules");
}

TEST(NormRules, LoadFromFile) {
  fixtures::TempDir dir;
  fixtures::write_text(dir / "rules.json", R"({"special_terms": {"k9": "k nine"}})");
  EXPECT_EQ(Normalizer(NormRules::load(dir / "rules.json"))("k9").text, "k nine");
  fixtures::write_text(dir / "broken.json", "{");
  EXPECT_THROW(NormRules::load(dir / "broken.json"), ConfigError);
}

}  // namespace
}  // namespace corpusforge
