#include "corpusforge/committee.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "corpusforge/adapters.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/metrics.hpp"

namespace corpusforge {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// (v - min) / (max - min); all zeros when the values are equal.
std::vector<double> min_max(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<double> out(values.size(), 0.0);
  const double range = *hi - *lo;
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

nlohmann::json matrix_json(const std::vector<std::vector<double>>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        r.push_back(nullptr);
      } else {
        r.push_back(v);
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

void validate_committee(std::span<const RecognizerId> members) {
  if (members.size() < 2) throw ConfigError("committee.adapters", "need at least two recognizers");
  std::set<std::string> names;
  std::set<int> priorities;
  for (const auto& m : members) {
    if (m.name.empty()) throw ConfigError("committee.adapters", "recognizer name is empty");
    if (!names.insert(m.name).second) {
      throw ConfigError("committee.adapters." + m.name, "duplicate recognizer name");
    }
    if (!priorities.insert(m.priority).second) {
      throw ConfigError("committee.adapters." + m.name + ".priority",
                        "duplicate priority " + std::to_string(m.priority));
    }
  }
}

const NormalizedText* HypothesisSet::find(std::string_view recognizer) const {
  for (const auto& [id, text] : transcripts) {
    if (id.name == recognizer) return &text;
  }
  return nullptr;
}

bool HypothesisSet::has_empty() const {
  return std::any_of(transcripts.begin(), transcripts.end(),
                     [](const auto& entry) { return entry.second.empty(); });
}

std::optional<std::size_t> RelativeErrorReport::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < recognizers.size(); ++i) {
    if (recognizers[i].name == name) return i;
  }
  return std::nullopt;
}

nlohmann::json RelativeErrorReport::to_json() const {
  nlohmann::json names = nlohmann::json::array();
  for (const auto& r : recognizers) names.push_back(r.name);
  return {
      {"recognizers", names},
      {"wer_matrix", matrix_json(wer_matrix)},
      {"cer_matrix", matrix_json(cer_matrix)},
      {"avg_wer", avg_wer},
      {"avg_cer", avg_cer},
      {"norm_wer", norm_wer},
      {"norm_cer", norm_cer},
      {"combined", combined},
      {"alpha", alpha},
      {"winner", winner_id().name},
      {"winner_er", winner_er},
      {"winner_avg_wer", winner_avg_wer},
      {"winner_avg_cer", winner_avg_cer},
  };
}

RelativeErrorReport relative_rates(const HypothesisSet& hypotheses, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("committee.alpha", "must be in [0, 1]");
  if (hypotheses.transcripts.size() < 2) {
    throw DataError("clip " + hypotheses.clip_id + ": need at least two transcripts");
  }
  auto entries = hypotheses.transcripts;
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first.priority < b.first.priority; });
  for (const auto& [id, text] : entries) {
    if (text.empty()) {
      throw DataError("clip " + hypotheses.clip_id + ": empty transcript from " + id.name);
    }
  }

  const std::size_t n = entries.size();
  RelativeErrorReport report;
  report.alpha = alpha;
  report.wer_matrix.assign(n, std::vector<double>(n, kNaN));
  report.cer_matrix.assign(n, std::vector<double>(n, kNaN));
  report.avg_wer.assign(n, 0.0);
  report.avg_cer.assign(n, 0.0);
  for (const auto& entry : entries) report.recognizers.push_back(entry.first);

  for (std::size_t j = 0; j < n; ++j) {
    const std::string& target = entries[j].second.text;
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const std::string& prediction = entries[k].second.text;
      report.wer_matrix[j][k] = wer(target, prediction);
      report.cer_matrix[j][k] = cer(target, prediction);
      report.avg_wer[j] += report.wer_matrix[j][k];
      report.avg_cer[j] += report.cer_matrix[j][k];
    }
    report.avg_wer[j] /= static_cast<double>(n - 1);
    report.avg_cer[j] /= static_cast<double>(n - 1);
  }

  report.norm_wer = min_max(report.avg_wer);
  report.norm_cer = min_max(report.avg_cer);
  report.combined.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    report.combined[j] = alpha * report.norm_wer[j] + (1.0 - alpha) * report.norm_cer[j];
  }
  // Entries are in priority order, so the first minimum is the tie winner.
  report.winner = static_cast<std::size_t>(
      std::min_element(report.combined.begin(), report.combined.end()) - report.combined.begin());
  report.winner_er = report.combined[report.winner];
  report.winner_avg_wer = report.avg_wer[report.winner];
  report.winner_avg_cer = report.avg_cer[report.winner];
  return report;
}

Utterance make_utterance(const ClipRef& clip, const HypothesisSet& hypotheses,
                         RelativeErrorReport report) {
  const auto& winner = report.winner_id();
  const NormalizedText* text = hypotheses.find(winner.name);
  if (!text) throw DataError("clip " + clip.id + ": winner " + winner.name + " has no transcript");
  Utterance u;
  u.clip_id = clip.id;
  u.audio = clip.audio_path;
  u.source = clip.source;
  u.duration_ms = clip.duration_ms;
  u.transcript = *text;
  u.winner = winner.name;
  u.winner_er = report.winner_er;
  u.winner_avg_wer = report.winner_avg_wer;
  u.winner_avg_cer = report.winner_avg_cer;
  u.char_len = static_cast<int64_t>(char_tokens(text->text).size());
  u.word_len = static_cast<int64_t>(word_tokens(text->text).size());
  u.report = std::move(report);
  return u;
}

std::vector<Utterance> select_transcript(std::span<const RelativeErrorReport> reports,
                                         std::span<const HypothesisSet> hypotheses,
                                         const std::map<std::string, ClipRef>& clips) {
  if (reports.size() != hypotheses.size()) {
    throw DataError("select_transcript: reports and hypotheses differ in length");
  }
  std::vector<Utterance> out;
  out.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto it = clips.find(hypotheses[i].clip_id);
    ClipRef clip = it != clips.end() ? it->second : ClipRef{hypotheses[i].clip_id, {}, 0, {}};
    out.push_back(make_utterance(clip, hypotheses[i], reports[i]));
  }
  return out;
}

TranscriptionResult transcribe_all(std::span<const ClipRef> clips,
                                   std::span<const std::shared_ptr<RecognizerAdapter>> adapters,
                                   const Normalizer& normalizer, const TranscribeOptions& options) {
  std::vector<RecognizerId> members;
  for (const auto& a : adapters) members.push_back(a->id());
  validate_committee(members);

  std::vector<std::shared_ptr<RecognizerAdapter>> ordered(adapters.begin(), adapters.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a->id().priority < b->id().priority;
  });

  struct Slot {
    HypothesisSet hypotheses;
    std::vector<TranscriptionFailure> failures;
  };
  std::vector<Slot> slots(clips.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < clips.size(); i = next++) {
      Slot& slot = slots[i];
      slot.hypotheses.clip_id = clips[i].id;
      for (const auto& adapter : ordered) {
        try {
          const std::string raw = adapter->transcribe(clips[i]);
          slot.hypotheses.transcripts.emplace_back(adapter->id(), normalizer(raw));
        } catch (const std::exception& e) {
          slot.failures.push_back({clips[i].id, adapter->id().name, e.what()});
        }
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::clamp<std::size_t>(
      options.max_in_flight == 0 ? 1 : options.max_in_flight, 1, std::max<std::size_t>(1, clips.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<std::size_t> order(clips.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return clips[a].id < clips[b].id; });

  TranscriptionResult result;
  for (std::size_t i : order) {
    Slot& slot = slots[i];
    if (slot.failures.empty()) {
      result.hypotheses.push_back(std::move(slot.hypotheses));
    } else {
      for (auto& f : slot.failures) result.failures.push_back(std::move(f));
    }
  }
  return result;
}

}  // namespace corpusforge
