#ifndef CORPUSFORGE_FILTERS_HPP_
#define CORPUSFORGE_FILTERS_HPP_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpusforge/committee.hpp"

namespace corpusforge {

enum class TraineeCombine { kAny, kAll };

// f1: error-rate bounds on the selected transcript.
struct ThresholdConfig {
  double max_er = 0.2;
  double max_wer = 0.25;
  double max_cer = 0.15;
  // Lower bounds on the trainee members' own average rates; 0 disables.
  // Keeps clips where the committee agrees but the trainee does not.
  double trainee_min_wer = 0.0;
  double trainee_min_cer = 0.0;
  TraineeCombine trainee_combine = TraineeCombine::kAny;

  bool trainee_bounds_enabled() const { return trainee_min_wer > 0.0 || trainee_min_cer > 0.0; }
  // Throws ConfigError (field names relative to the "thresholds" section).
  void validate() const;
};

// f2: caps how many utterances may share one keyword signature.
struct FrequencyConfig {
  std::set<std::string> stopwords;
  int max_per_signature = 20;

  static FrequencyConfig defaults();
  void validate() const;
};

// f3: minimum transcript length and the duration window.
struct LengthConfig {
  int64_t min_chars = 18;
  double min_s = 1.5;
  double max_s = 15.0;

  void validate() const;
};

// Sorted unique non-stopword tokens joined by single spaces. All-stopword
// text yields "".
std::string keyword_signature(std::string_view text, const std::set<std::string>& stopwords);

// Why `utt` fails f1, or nullopt when it passes. Trainee bounds need the
// in-process report; a record without one fails with a DataError when
// those bounds are enabled. A committee with no trainee passes them.
std::optional<std::string> f1_violation(const Utterance& utt, const ThresholdConfig& t);
std::optional<std::string> f3_violation(const Utterance& utt, const LengthConfig& l);

std::vector<Utterance> filter_f1(std::span<const Utterance> utts, const ThresholdConfig& t);

// Within each signature group keeps the max_per_signature utterances with
// the lowest winner_er (ties by clip id); input order is preserved.
std::vector<Utterance> filter_f2(std::span<const Utterance> utts, const FrequencyConfig& f);

std::vector<Utterance> filter_f3(std::span<const Utterance> utts, const LengthConfig& l = {});

struct CorpusStats {
  double total_duration_h = 0.0;
  int64_t total_words = 0;
  int64_t unique_words = 0;
  int64_t n_sources = 0;
  int64_t n_utterances = 0;
  // Lower median for even counts.
  int64_t median_words = 0;
  int64_t median_chars = 0;
  double median_duration_s = 0.0;

  nlohmann::ordered_json to_json() const;
};

// An utterance with no source counts as its own source.
CorpusStats corpus_stats(std::span<const Utterance> records);

}  // namespace corpusforge

#endif  // CORPUSFORGE_FILTERS_HPP_
