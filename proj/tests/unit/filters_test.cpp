#include "corpusforge/filters.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "corpusforge/error.hpp"
#include "corpusforge/stopwords.hpp"

namespace corpusforge {
namespace {

Utterance utt(const std::string& id, const std::string& text, double er = 0.0, double wer = 0.0,
              double cer = 0.0, int64_t duration_ms = 3000, const std::string& source = {}) {
  Utterance u;
  u.clip_id = id;
  u.audio = id + ".wav";
  u.source = source.empty() ? id : source;
  u.duration_ms = duration_ms;
  u.transcript = {text};
  u.winner = "a";
  u.winner_er = er;
  u.winner_avg_wer = wer;
  u.winner_avg_cer = cer;
  u.char_len = static_cast<int64_t>(text.size());
  u.word_len = text.empty() ? 0 : static_cast<int64_t>(std::count(text.begin(), text.end(), ' ') + 1);
  return u;
}

// Report with one reference member and the given trainee rates.
RelativeErrorReport report_with_trainees(const std::vector<std::pair<double, double>>& trainees) {
  RelativeErrorReport r;
  r.recognizers.push_back({"ref", 0, false});
  r.avg_wer.push_back(0.0);
  r.avg_cer.push_back(0.0);
  int p = 1;
  for (const auto& [w, c] : trainees) {
    r.recognizers.push_back({"t" + std::to_string(p), p, true});
    r.avg_wer.push_back(w);
    r.avg_cer.push_back(c);
    ++p;
  }
  return r;
}

std::vector<std::string> ids(const std::vector<Utterance>& v) {
  std::vector<std::string> out;
  for (const auto& u : v) out.push_back(u.clip_id);
  return out;
}

TEST(F1, UpperBounds) {
  ThresholdConfig t;
  t.max_er = 0.2;
  t.max_wer = 0.25;
  t.max_cer = 0.15;
  EXPECT_FALSE(f1_violation(utt("a", "x", 0.2, 0.25, 0.15), t));
  EXPECT_TRUE(f1_violation(utt("a", "x", 0.21, 0.0, 0.0), t));
  EXPECT_TRUE(f1_violation(utt("a", "x", 0.0, 0.26, 0.0), t));
  EXPECT_TRUE(f1_violation(utt("a", "x", 0.0, 0.0, 0.151), t));
  const auto why = f1_violation(utt("a", "x", 0.0, 0.4, 0.0), t);
  ASSERT_TRUE(why);
  EXPECT_NE(why->find("max_wer"), std::string::npos);
}

TEST(F1, TraineeLowerBounds) {
  ThresholdConfig t;
  t.max_er = 1.0;
  t.max_wer = 1.0;
  t.max_cer = 1.0;
  Utterance u = utt("a", "x");
  u.report = report_with_trainees({{0.4, 0.2}});

  t.trainee_min_wer = 0.1;
  EXPECT_FALSE(f1_violation(u, t)) << "trainee at 0.4 clears a 0.1 floor";
  t.trainee_min_wer = 0.5;
  EXPECT_TRUE(f1_violation(u, t)) << "trainee at 0.4 misses a 0.5 floor";

  t.trainee_min_wer = 0.1;
  t.trainee_min_cer = 0.3;
  EXPECT_TRUE(f1_violation(u, t)) << "both floors must hold";
}

TEST(F1, TraineeCombineModes) {
  ThresholdConfig t;
  t.max_er = t.max_wer = t.max_cer = 1.0;
  t.trainee_min_wer = 0.3;
  Utterance u = utt("a", "x");
  u.report = report_with_trainees({{0.4, 0.0}, {0.1, 0.0}});
  t.trainee_combine = TraineeCombine::kAny;
  EXPECT_FALSE(f1_violation(u, t));
  t.trainee_combine = TraineeCombine::kAll;
  EXPECT_TRUE(f1_violation(u, t));
}

TEST(F1, TraineeBoundsWithoutTraineesOrReport) {
  ThresholdConfig t;
  t.trainee_min_wer = 0.3;
  Utterance u = utt("a", "x");
  EXPECT_THROW(f1_violation(u, t), DataError);
  u.report = report_with_trainees({});
  EXPECT_FALSE(f1_violation(u, t));
}

TEST(F1, TighteningNeverAddsSurvivors) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rate(0.0, 0.5);
  std::vector<Utterance> pool;
  for (int i = 0; i < 500; ++i) {
    Utterance u = utt("u" + std::to_string(i), "text", rate(rng), rate(rng), rate(rng));
    u.report = report_with_trainees({{rate(rng), rate(rng)}, {rate(rng), rate(rng)}});
    pool.push_back(u);
  }
  for (int trial = 0; trial < 200; ++trial) {
    ThresholdConfig loose;
    loose.max_er = rate(rng);
    loose.max_wer = rate(rng);
    loose.max_cer = rate(rng);
    loose.trainee_min_wer = rate(rng) / 4;
    loose.trainee_min_cer = rate(rng) / 4;
    ThresholdConfig tight = loose;
    std::uniform_real_distribution<double> shrink(0.0, 1.0);
    tight.max_er *= shrink(rng);
    tight.max_wer *= shrink(rng);
    tight.max_cer *= shrink(rng);
    tight.trainee_min_wer += rate(rng) / 4;
    tight.trainee_min_cer += rate(rng) / 4;
    const auto a = ids(filter_f1(pool, loose));
    const auto b = ids(filter_f1(pool, tight));
    const std::set<std::string> loose_set(a.begin(), a.end());
    for (const auto& id : b) ASSERT_TRUE(loose_set.contains(id));
  }
}

TEST(ThresholdConfig, Validate) {
  ThresholdConfig t;
  EXPECT_NO_THROW(t.validate());
  t.max_er = -0.1;
  try {
    t.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "thresholds.max_er");
  }
  t = {};
  t.max_wer = 0.1;
  t.trainee_min_wer = 0.2;
  EXPECT_THROW(t.validate(), ConfigError);
}

TEST(KeywordSignature, SortedUniqueContentWords) {
  const std::set<std::string> stop = {"i", "to", "my", "the", "want"};
  EXPECT_EQ(keyword_signature("i want to change my benefits", stop), "benefits change");
  EXPECT_EQ(keyword_signature("benefits change change", stop), "benefits change");
  EXPECT_EQ(keyword_signature("i want to", stop), "");
  EXPECT_EQ(keyword_signature("", stop), "");
}

TEST(F2, CapsEachSignatureGroup) {
  FrequencyConfig f;
  f.stopwords = {"yes", "please", "i", "a", "need"};
  f.max_per_signature = 20;
  std::vector<Utterance> v;
  for (int i = 0; i < 30; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "y%02d", i);
    // Lower er for higher index, so the kept set is not simply the first 20.
    v.push_back(utt(id, i % 2 ? "representative please" : "representative", 0.01 * (30 - i)));
  }
  v.push_back(utt("other", "i need a refund", 0.5));
  const auto kept = filter_f2(v, f);
  ASSERT_EQ(kept.size(), 21u);
  std::set<std::string> kept_ids;
  for (const auto& u : kept) kept_ids.insert(u.clip_id);
  EXPECT_TRUE(kept_ids.contains("other"));
  for (int i = 10; i < 30; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "y%02d", i);
    EXPECT_TRUE(kept_ids.contains(id)) << id;
  }
  // Input order is preserved.
  EXPECT_TRUE(std::is_sorted(kept.begin(), kept.end() - 1,
                             [](const Utterance& a, const Utterance& b) { return a.clip_id < b.clip_id; }));
}

TEST(F2, TiesBreakByClipId) {
  FrequencyConfig f;
  f.max_per_signature = 2;
  std::vector<Utterance> v = {utt("c", "hello"), utt("a", "hello"), utt("b", "hello")};
  EXPECT_EQ(ids(filter_f2(v, f)), (std::vector<std::string>{"a", "b"}));
}

TEST(F2, AllStopwordUtterancesShareOneGroup) {
  FrequencyConfig f;
  f.stopwords = {"yes", "okay", "thank", "you"};
  f.max_per_signature = 1;
  std::vector<Utterance> v = {utt("a", "yes"), utt("b", "okay thank you"), utt("c", "refund")};
  EXPECT_EQ(ids(filter_f2(v, f)), (std::vector<std::string>{"a", "c"}));
}

TEST(FrequencyConfig, DefaultsAndValidate) {
  const auto f = FrequencyConfig::defaults();
  EXPECT_EQ(f.max_per_signature, 20);
  EXPECT_EQ(f.stopwords, default_stopwords());
  FrequencyConfig bad = f;
  bad.max_per_signature = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(F3, CharacterLengthBoundary) {
  const LengthConfig l;
  const std::string seventeen = "abcdefgh ijklmnop";
  const std::string eighteen = "abcdefgh ijklmnopq";
  ASSERT_EQ(seventeen.size(), 17u);
  ASSERT_EQ(eighteen.size(), 18u);
  EXPECT_TRUE(f3_violation(utt("a", seventeen), l));
  EXPECT_FALSE(f3_violation(utt("a", eighteen), l));
}

TEST(F3, DurationBoundary) {
  const LengthConfig l;
  const std::string text = "long enough transcript";
  EXPECT_TRUE(f3_violation(utt("a", text, 0, 0, 0, 1400), l));
  EXPECT_TRUE(f3_violation(utt("a", text, 0, 0, 0, 1499), l));
  EXPECT_FALSE(f3_violation(utt("a", text, 0, 0, 0, 1500), l));
  EXPECT_FALSE(f3_violation(utt("a", text, 0, 0, 0, 15000), l));
  EXPECT_TRUE(f3_violation(utt("a", text, 0, 0, 0, 15001), l));
  const std::vector<Utterance> v = {utt("a", text, 0, 0, 0, 1400), utt("b", text),
                                    utt("c", "short")};
  EXPECT_EQ(ids(filter_f3(v)), (std::vector<std::string>{"b"}));
}

TEST(CorpusStats, Summaries) {
  const std::vector<Utterance> v = {
      utt("a", "one two three four five", 0, 0, 0, 1800000, "call1"),
      utt("b", "one two three four five six seven", 0, 0, 0, 1800000, "call1"),
      utt("c", "a b c d e f g h i j k", 0, 0, 0, 3600000, "call2")};
  const auto s = corpus_stats(v);
  EXPECT_EQ(s.n_utterances, 3);
  EXPECT_DOUBLE_EQ(s.total_duration_h, 2.0);
  EXPECT_EQ(s.total_words, 23);
  EXPECT_EQ(s.unique_words, 18);
  EXPECT_EQ(s.n_sources, 2);
  EXPECT_EQ(s.median_words, 7);
  EXPECT_EQ(s.median_chars, 23);
  EXPECT_DOUBLE_EQ(s.median_duration_s, 1800.0);
  const auto j = s.to_json();
  EXPECT_EQ(j["median_words"], 7);
}

TEST(CorpusStats, LowerMedianAndEmpty) {
  const std::vector<Utterance> v = {utt("a", "w w"), utt("b", "w w w w")};
  EXPECT_EQ(corpus_stats(v).median_words, 2);
  const auto empty = corpus_stats({});
  EXPECT_EQ(empty.n_utterances, 0);
  EXPECT_EQ(empty.median_words, 0);
}

}  // namespace
}  // namespace corpusforge
