#include "corpusforge/itn.hpp"

#include <random>

#include <gtest/gtest.h>

#include "corpusforge/textnorm.hpp"

namespace corpusforge {
namespace {

class Itn : public ::testing::Test {
 protected:
  NormRules norm_rules = NormRules::defaults();
  Normalizer norm{norm_rules};
  ItnRules itn = ItnRules::from_norm_rules(norm_rules);
};

TEST_F(Itn, Examples) {
  EXPECT_EQ(inverse_normalize("i need my w two form", itn), "i need my w2 form");
  EXPECT_EQ(inverse_normalize("covid nineteen coverage", itn), "covid-19 coverage");
  EXPECT_EQ(inverse_normalize("a d n d and four o one k", itn), "ad&d and 401k");
  EXPECT_EQ(inverse_normalize("hello world", itn), "hello world");
  EXPECT_EQ(inverse_normalize("", itn), "");
}

TEST_F(Itn, RoundTripsEveryShippedTerm) {
  ASSERT_FALSE(norm_rules.special_terms.empty());
  for (const auto& [raw, spoken] : norm_rules.special_terms) {
    EXPECT_EQ(inverse_normalize(norm(raw).text, itn), raw) << raw;
    EXPECT_EQ(inverse_normalize(norm("about the " + raw + " form").text, itn),
              "about the " + raw + " form")
        << raw;
  }
}

TEST_F(Itn, RulesAreLongestFirst) {
  for (std::size_t i = 1; i < itn.rules.size(); ++i) {
    EXPECT_GE(itn.rules[i - 1].spoken.size(), itn.rules[i].spoken.size());
  }
}

TEST_F(Itn, RespectsWordBoundaries) {
  EXPECT_EQ(inverse_normalize("network two", itn), "network two");
  EXPECT_EQ(inverse_normalize("w twofold", itn), "w twofold");
  EXPECT_EQ(inverse_normalize("aw two", itn), "aw two");
  EXPECT_EQ(inverse_normalize("the w two.", itn), "the w2.");
}

TEST_F(Itn, LongestMatchWins) {
  NormRules rules;
  rules.special_terms = {{"w2", "w two"}, {"w22", "w two two"}};
  const auto inv = ItnRules::from_norm_rules(rules);
  EXPECT_EQ(inverse_normalize("w two two", inv), "w22");
  EXPECT_EQ(inverse_normalize("w two w two two", inv), "w2 w22");
}

TEST_F(Itn, FirstDictionaryEntryWinsSharedSpokenForm) {
  NormRules rules;
  rules.special_terms = {{"hsa", "h s a"}, {"h.s.a", "h s a"}};
  EXPECT_EQ(inverse_normalize("my h s a", ItnRules::from_norm_rules(rules)), "my hsa");
}

TEST_F(Itn, SubstringSafetyFuzz) {
  // Words built from fragments of spoken keys glued together must never be
  // rewritten, since none of them is a whole key on word boundaries.
  std::vector<std::string> pieces;
  for (const auto& r : itn.rules) {
    for (const auto& w : r.spoken) pieces.push_back(w);
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    for (int w = 0; w < 5; ++w) {
      if (!text.empty()) text += ' ';
      text += "x" + pieces[pick(rng)] + pieces[pick(rng)];
    }
    EXPECT_EQ(inverse_normalize(text, itn), text);
  }
}

TEST_F(Itn, CollapsesWhitespace) {
  EXPECT_EQ(inverse_normalize("  w   two \t form ", itn), "w2 form");
}

}  // namespace
}  // namespace corpusforge
