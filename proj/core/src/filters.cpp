#include "corpusforge/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "corpusforge/audio.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/metrics.hpp"
#include "corpusforge/stopwords.hpp"

namespace corpusforge {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_rate(const char* field, double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("thresholds.") + field, "must be a finite value >= 0");
  }
}

}  // namespace

void ThresholdConfig::validate() const {
  require_rate("max_er", max_er);
  require_rate("max_wer", max_wer);
  require_rate("max_cer", max_cer);
  require_rate("trainee_min_wer", trainee_min_wer);
  require_rate("trainee_min_cer", trainee_min_cer);
  if (trainee_min_wer > 0.0 && trainee_min_wer > max_wer) {
    throw ConfigError("thresholds.trainee_min_wer", "exceeds thresholds.max_wer");
  }
  if (trainee_min_cer > 0.0 && trainee_min_cer > max_cer) {
    throw ConfigError("thresholds.trainee_min_cer", "exceeds thresholds.max_cer");
  }
}

FrequencyConfig FrequencyConfig::defaults() {
  FrequencyConfig f;
  f.stopwords = default_stopwords();
  return f;
}

void FrequencyConfig::validate() const {
  if (max_per_signature < 1) throw ConfigError("frequency.max_per_signature", "must be >= 1");
}

void LengthConfig::validate() const {
  if (min_chars < 0) throw ConfigError("length.min_chars", "must be >= 0");
  if (!(min_s >= 0.0)) throw ConfigError("length.min_s", "must be >= 0");
  if (!(max_s > min_s)) throw ConfigError("length.max_s", "must exceed length.min_s");
}

std::string keyword_signature(std::string_view text, const std::set<std::string>& stopwords) {
  std::set<std::string_view> keys;
  for (const auto token : word_tokens(text)) {
    if (!stopwords.contains(std::string(token))) keys.insert(token);
  }
  std::string sig;
  for (const auto k : keys) {
    if (!sig.empty()) sig += ' ';
    sig += k;
  }
  return sig;
}

std::optional<std::string> f1_violation(const Utterance& utt, const ThresholdConfig& t) {
  if (utt.winner_er > t.max_er) return "er " + num(utt.winner_er) + " > max_er " + num(t.max_er);
  if (utt.winner_avg_wer > t.max_wer) {
    return "avg_wer " + num(utt.winner_avg_wer) + " > max_wer " + num(t.max_wer);
  }
  if (utt.winner_avg_cer > t.max_cer) {
    return "avg_cer " + num(utt.winner_avg_cer) + " > max_cer " + num(t.max_cer);
  }
  if (!t.trainee_bounds_enabled()) return std::nullopt;
  if (!utt.report) {
    throw DataError("clip " + utt.clip_id + ": trainee bounds need the committee report");
  }
  const auto& r = *utt.report;
  int trainees = 0;
  int satisfied = 0;
  for (std::size_t j = 0; j < r.recognizers.size(); ++j) {
    if (!r.recognizers[j].trainee) continue;
    ++trainees;
    if (r.avg_wer[j] >= t.trainee_min_wer && r.avg_cer[j] >= t.trainee_min_cer) ++satisfied;
  }
  if (trainees == 0) return std::nullopt;
  const bool ok = t.trainee_combine == TraineeCombine::kAny ? satisfied > 0 : satisfied == trainees;
  if (ok) return std::nullopt;
  return "trainee rates below trainee_min_wer " + num(t.trainee_min_wer) + " / trainee_min_cer " +
         num(t.trainee_min_cer) + " (" + std::to_string(satisfied) + " of " +
         std::to_string(trainees) + " trainees)";
}

std::optional<std::string> f3_violation(const Utterance& utt, const LengthConfig& l) {
  if (utt.char_len < l.min_chars) {
    return "char_len " + std::to_string(utt.char_len) + " < " + std::to_string(l.min_chars);
  }
  if (!duration_in_range(utt.duration_ms, l.min_s, l.max_s)) {
    return "duration " + std::to_string(utt.duration_ms) + " ms outside [" + num(l.min_s) + ", " +
           num(l.max_s) + "] s";
  }
  return std::nullopt;
}

std::vector<Utterance> filter_f1(std::span<const Utterance> utts, const ThresholdConfig& t) {
  std::vector<Utterance> out;
  for (const auto& u : utts) {
    if (!f1_violation(u, t)) out.push_back(u);
  }
  return out;
}

std::vector<Utterance> filter_f2(std::span<const Utterance> utts, const FrequencyConfig& f) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    groups[keyword_signature(utts[i].transcript.text, f.stopwords)].push_back(i);
  }
  std::vector<bool> keep(utts.size(), false);
  const auto cap = static_cast<std::size_t>(std::max(f.max_per_signature, 1));
  for (auto& [sig, members] : groups) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      if (utts[a].winner_er != utts[b].winner_er) return utts[a].winner_er < utts[b].winner_er;
      return utts[a].clip_id < utts[b].clip_id;
    });
    for (std::size_t k = 0; k < members.size() && k < cap; ++k) keep[members[k]] = true;
  }
  std::vector<Utterance> out;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    if (keep[i]) out.push_back(utts[i]);
  }
  return out;
}

std::vector<Utterance> filter_f3(std::span<const Utterance> utts, const LengthConfig& l) {
  std::vector<Utterance> out;
  for (const auto& u : utts) {
    if (!f3_violation(u, l)) out.push_back(u);
  }
  return out;
}

nlohmann::ordered_json CorpusStats::to_json() const {
  nlohmann::ordered_json j;
  j["n_utterances"] = n_utterances;
  j["total_duration_h"] = total_duration_h;
  j["total_words"] = total_words;
  j["unique_words"] = unique_words;
  j["n_sources"] = n_sources;
  j["median_words"] = median_words;
  j["median_chars"] = median_chars;
  j["median_duration_s"] = median_duration_s;
  return j;
}

namespace {

template <typename T>
T lower_median(std::vector<T> values) {
  if (values.empty()) return T{};
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace

CorpusStats corpus_stats(std::span<const Utterance> records) {
  CorpusStats s;
  if (records.empty()) return s;
  std::set<std::string> vocab;
  std::set<std::string> sources;
  std::vector<int64_t> words;
  std::vector<int64_t> chars;
  std::vector<int64_t> durations;
  int64_t total_ms = 0;
  for (const auto& r : records) {
    const auto tokens = word_tokens(r.transcript.text);
    for (const auto t : tokens) vocab.emplace(t);
    sources.insert(r.source.empty() ? "\x1f" + r.clip_id : r.source);
    words.push_back(static_cast<int64_t>(tokens.size()));
    chars.push_back(static_cast<int64_t>(char_tokens(r.transcript.text).size()));
    durations.push_back(r.duration_ms);
    total_ms += r.duration_ms;
  }
  s.n_utterances = static_cast<int64_t>(records.size());
  s.total_duration_h = static_cast<double>(total_ms) / 3.6e6;
  for (const auto w : words) s.total_words += w;
  s.unique_words = static_cast<int64_t>(vocab.size());
  s.n_sources = static_cast<int64_t>(sources.size());
  s.median_words = lower_median(words);
  s.median_chars = lower_median(chars);
  s.median_duration_s = static_cast<double>(lower_median(durations)) / 1000.0;
  return s;
}

}  // namespace corpusforge
