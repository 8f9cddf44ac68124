#ifndef CORPUSFORGE_COMMITTEE_HPP_
#define CORPUSFORGE_COMMITTEE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpusforge/textnorm.hpp"

namespace corpusforge {

class RecognizerAdapter;

struct RecognizerId {
  std::string name;
  // Lower rank wins ties.
  int priority = 0;
  // A model being fine-tuned on the output (as opposed to a reference system).
  bool trainee = false;

  friend bool operator==(const RecognizerId&, const RecognizerId&) = default;
};

// Throws ConfigError unless there are at least two members with unique
// names and unique priorities.
void validate_committee(std::span<const RecognizerId> members);

// An audio file handed to recognizers.
struct ClipRef {
  std::string id;
  std::string audio_path;
  int64_t duration_ms = 0;
  // Original recording the clip was cut from.
  std::string source;
};

struct HypothesisSet {
  std::string clip_id;
  // Sorted by ascending priority.
  std::vector<std::pair<RecognizerId, NormalizedText>> transcripts;

  const NormalizedText* find(std::string_view recognizer) const;
  bool has_empty() const;
};

struct RelativeErrorReport {
  // Row/column order of every matrix and vector below.
  std::vector<RecognizerId> recognizers;
  // wer_matrix[j][k]: transcript j as target, k as prediction. The diagonal
  // is never computed and holds NaN.
  std::vector<std::vector<double>> wer_matrix;
  std::vector<std::vector<double>> cer_matrix;
  std::vector<double> avg_wer;
  std::vector<double> avg_cer;
  std::vector<double> norm_wer;
  std::vector<double> norm_cer;
  std::vector<double> combined;
  double alpha = 0.5;
  std::size_t winner = 0;
  double winner_er = 0.0;
  double winner_avg_wer = 0.0;
  double winner_avg_cer = 0.0;

  const RecognizerId& winner_id() const { return recognizers.at(winner); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  nlohmann::json to_json() const;
};

// Scores every transcript against every other, averages each row over the
// J-1 peers, min-max normalizes the averages across the committee (a column
// of equal values normalizes to zeros), combines them as
// alpha·wer + (1-alpha)·cer and picks the arg-min, breaking ties by
// priority. Throws DataError when fewer than two transcripts are present or
// any transcript is empty.
RelativeErrorReport relative_rates(const HypothesisSet& hypotheses, double alpha = 0.5);

struct Utterance {
  std::string clip_id;
  std::string audio;
  std::string source;
  int64_t duration_ms = 0;
  NormalizedText transcript;
  std::string winner;
  double winner_er = 0.0;
  double winner_avg_wer = 0.0;
  double winner_avg_cer = 0.0;
  int64_t char_len = 0;
  int64_t word_len = 0;
  // Present for utterances produced in-process; absent when read back from
  // a manifest file.
  std::optional<RelativeErrorReport> report;
};

// Builds the utterance for `clip` carrying the winning transcript.
Utterance make_utterance(const ClipRef& clip, const HypothesisSet& hypotheses,
                         RelativeErrorReport report);

// Pairs reports[i] with hypotheses[i] and looks clips up by id.
std::vector<Utterance> select_transcript(std::span<const RelativeErrorReport> reports,
                                         std::span<const HypothesisSet> hypotheses,
                                         const std::map<std::string, ClipRef>& clips);

struct TranscriptionFailure {
  std::string clip_id;
  std::string recognizer;
  std::string reason;
};

struct TranscriptionResult {
  // Ordered by clip id.
  std::vector<HypothesisSet> hypotheses;
  // Ordered by clip id, then committee priority.
  std::vector<TranscriptionFailure> failures;
};

struct TranscribeOptions {
  // Clips processed concurrently.
  unsigned max_in_flight = 4;
};

// Runs every adapter on every clip and normalizes the output. A clip on
// which any adapter fails is excluded and reported instead; adapter errors
// never abort the batch.
TranscriptionResult transcribe_all(std::span<const ClipRef> clips,
                                   std::span<const std::shared_ptr<RecognizerAdapter>> adapters,
                                   const Normalizer& normalizer,
                                   const TranscribeOptions& options = {});

}  // namespace corpusforge

#endif  // CORPUSFORGE_COMMITTEE_HPP_
