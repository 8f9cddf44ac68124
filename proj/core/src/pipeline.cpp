#include "corpusforge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <set>

#include "corpusforge/adapters.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/io.hpp"
#include "corpusforge/logging.hpp"
#include "corpusforge/wav.hpp"

namespace corpusforge {

namespace fs = std::filesystem;

nlohmann::ordered_json StageCounts::to_json() const {
  return {{"files", files},       {"clips", clips},   {"in_duration", in_duration},
          {"transcribed", transcribed}, {"scored", scored}, {"after_f1", after_f1},
          {"after_f2", after_f2}, {"after_f3", after_f3}};
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<fs::path> list_wavs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("input directory " + dir.string() + " does not exist");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return out;
}

bool is_canonical(const WavData& wav) {
  return wav.sample_rate == kCanonicalSampleRate && wav.channels == 1 &&
         wav.bits_per_sample == 16 && !wav.is_float;
}

}  // namespace

std::vector<ClipRef> prepare_clips(const PipelineConfig& config, StageCounts& counts,
                                   std::vector<Rejection>& rejected) {
  const auto files = list_wavs(config.input_dir);
  counts.files = static_cast<int64_t>(files.size());
  const DecodeOptions decode{kCanonicalSampleRate, config.resample_quality};
  std::vector<ClipRef> clips;
  std::set<std::string> ids;

  auto add = [&](ClipRef clip) {
    if (!ids.insert(clip.id).second) throw DataError("duplicate clip id " + clip.id);
    clips.push_back(std::move(clip));
  };

  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    AudioClip audio;
    bool canonical = false;
    try {
      const auto bytes = read_file_bytes(file);
      canonical = is_canonical(parse_wav(bytes));
      audio = decode_wav_bytes(bytes, file.string(), decode);
    } catch (const DataError& e) {
      log_warn(file.string() + ": " + e.what());
      rejected.push_back({stem, "decode", e.what(), std::nullopt});
      continue;
    }

    if (config.segment) {
      const auto spans = segment_spans(audio, config.silence);
      const fs::path seg_dir = config.output_dir / "segments";
      nlohmann::ordered_json sidecar;
      sidecar["source"] = file.filename().string();
      sidecar["duration_ms"] = audio.duration_ms();
      sidecar["segments"] = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < spans.size(); ++i) {
        const std::string name =
            stem + "_" + std::to_string(i) + "_" + std::to_string(spans[i].start_ms);
        const fs::path path = seg_dir / (name + ".wav");
        const AudioClip piece = slice(audio, spans[i]);
        write_wav(path, piece);
        sidecar["segments"].push_back({{"index", i},
                                       {"file", name + ".wav"},
                                       {"start_ms", spans[i].start_ms},
                                       {"end_ms", spans[i].end_ms}});
        add({name, path.string(), piece.duration_ms(), stem});
      }
      write_file_atomic(seg_dir / (stem + ".json"), sidecar.dump(2) + "\n");
      if (spans.empty()) log_info(file.string() + ": no speech found");
      continue;
    }

    std::string audio_path = file.string();
    if (!canonical) {
      const fs::path copy = config.output_dir / "audio" / (stem + ".wav");
      write_wav(copy, audio);
      audio_path = copy.string();
    }
    add({stem, audio_path, audio.duration_ms(), stem});
  }
  std::sort(clips.begin(), clips.end(),
            [](const ClipRef& a, const ClipRef& b) { return a.id < b.id; });
  counts.clips = static_cast<int64_t>(clips.size());
  return clips;
}

RunResult run_iteration(const PipelineConfig& config,
                        std::span<const std::shared_ptr<RecognizerAdapter>> adapters) {
  config.validate(false);
  {
    std::vector<RecognizerId> members;
    for (const auto& a : adapters) members.push_back(a->id());
    validate_committee(members);
  }

  RunResult result;
  auto& counts = result.counts;
  auto& rejected = result.rejected;

  // Segmentation and canonical audio.
  const auto all_clips = prepare_clips(config, counts, rejected);
  log_info("prepared " + std::to_string(all_clips.size()) + " clips from " +
           std::to_string(counts.files) + " files");

  // Duration prefilter.
  std::vector<ClipRef> clips;
  for (const auto& c : all_clips) {
    if (duration_in_range(c.duration_ms, config.min_duration_s, config.max_duration_s)) {
      clips.push_back(c);
    } else {
      rejected.push_back({c.id, "duration",
                          "duration " + std::to_string(c.duration_ms) + " ms outside window",
                          std::nullopt});
    }
  }
  counts.in_duration = static_cast<int64_t>(clips.size());

  // Committee transcription.
  const Normalizer normalizer(config.norm_rules);
  auto transcription = transcribe_all(clips, adapters, normalizer, {config.max_in_flight});
  if (!clips.empty()) {
    std::map<std::string, std::set<std::string>> failed_clips;
    std::map<std::string, std::string> first_reason;
    for (const auto& f : transcription.failures) {
      failed_clips[f.recognizer].insert(f.clip_id);
      first_reason.emplace(f.recognizer, f.reason);
    }
    for (const auto& [name, failed] : failed_clips) {
      if (failed.size() == clips.size()) {
        throw AdapterError("transcribe: adapter " + name + " failed on all " +
                           std::to_string(clips.size()) + " clips (first error: " +
                           first_reason[name] + ")");
      }
    }
  }
  {
    std::map<std::string, std::string> reasons;
    for (const auto& f : transcription.failures) {
      auto& r = reasons[f.clip_id];
      if (!r.empty()) r += "; ";
      r += f.recognizer + ": " + f.reason;
    }
    for (auto& [id, reason] : reasons) rejected.push_back({id, "transcribe", reason, std::nullopt});
  }
  counts.transcribed = static_cast<int64_t>(transcription.hypotheses.size());

  // Relative error rates and transcript selection.
  std::map<std::string, ClipRef> by_id;
  for (const auto& c : clips) by_id.emplace(c.id, c);
  std::vector<Utterance> scored;
  for (const auto& h : transcription.hypotheses) {
    if (h.has_empty()) {
      std::string names;
      for (const auto& [id, text] : h.transcripts) {
        if (text.empty()) names += (names.empty() ? "" : ", ") + id.name;
      }
      rejected.push_back({h.clip_id, "committee", "empty transcript from " + names, std::nullopt});
      continue;
    }
    try {
      Utterance u = make_utterance(by_id.at(h.clip_id), h, relative_rates(h, config.alpha));
      u.audio = fs::path(u.audio).lexically_proximate(config.output_dir).generic_string();
      scored.push_back(std::move(u));
    } catch (const DataError& e) {
      rejected.push_back({h.clip_id, "committee", e.what(), std::nullopt});
    }
  }
  counts.scored = static_cast<int64_t>(scored.size());

  // f1: error-rate thresholds.
  std::vector<Utterance> after_f1;
  for (auto& u : scored) {
    if (auto why = f1_violation(u, config.thresholds)) {
      rejected.push_back({u.clip_id, "f1", *why, u});
    } else {
      after_f1.push_back(std::move(u));
    }
  }
  counts.after_f1 = static_cast<int64_t>(after_f1.size());

  // f2: keyword-signature cap.
  auto after_f2 = filter_f2(after_f1, config.frequency);
  {
    std::set<std::string> kept;
    for (const auto& u : after_f2) kept.insert(u.clip_id);
    for (const auto& u : after_f1) {
      if (kept.contains(u.clip_id)) continue;
      rejected.push_back({u.clip_id, "f2",
                          "signature \"" + keyword_signature(u.transcript.text, config.frequency.stopwords) +
                              "\" over cap " + std::to_string(config.frequency.max_per_signature),
                          u});
    }
  }
  counts.after_f2 = static_cast<int64_t>(after_f2.size());

  // f3: character length and duration.
  for (auto& u : after_f2) {
    if (auto why = f3_violation(u, config.length)) {
      rejected.push_back({u.clip_id, "f3", *why, u});
    } else {
      result.manifest.records.push_back(std::move(u));
    }
  }
  counts.after_f3 = static_cast<int64_t>(result.manifest.records.size());

  result.manifest.meta = {config.hash(), config.iteration, utc_timestamp()};
  result.stats = corpus_stats(result.manifest.records);
  if (result.manifest.records.empty()) log_warn("no utterance survived the filters");

  nlohmann::ordered_json stats;
  stats["meta"] = {{"config_hash", result.manifest.meta.config_hash},
                   {"iteration", result.manifest.meta.iteration},
                   {"created_at", result.manifest.meta.created_at}};
  stats["counts"] = counts.to_json();
  stats["stats"] = result.stats.to_json();

  write_file_atomic(config.output_dir / "manifest.jsonl", render_manifest(result.manifest.records));
  write_file_atomic(config.output_dir / "rejected.jsonl", render_rejections(rejected));
  write_file_atomic(config.output_dir / "stats.json", stats.dump(2) + "\n");
  write_file_atomic(config.output_dir / "report.txt", render_report(result));
  log_info("wrote " + std::to_string(counts.after_f3) + " records to " +
           (config.output_dir / "manifest.jsonl").string());
  return result;
}

RunResult run_iteration(const PipelineConfig& config) {
  config.validate();
  std::vector<std::shared_ptr<RecognizerAdapter>> adapters;
  for (const auto& spec : config.adapters) adapters.push_back(make_adapter(spec));
  return run_iteration(config, adapters);
}

std::string render_report(const RunResult& result) {
  const auto& c = result.counts;
  const auto& s = result.stats;
  std::string out;
  char line[160];
  auto add = [&](const char* label, int64_t value) {
    std::snprintf(line, sizeof line, "  %-24s %lld\n", label, static_cast<long long>(value));
    out += line;
  };
  out += "iteration " + std::to_string(result.manifest.meta.iteration) + ", config " +
         result.manifest.meta.config_hash + "\n\nstage counts\n";
  add("input files", c.files);
  add("clips", c.clips);
  add("within duration window", c.in_duration);
  add("transcribed", c.transcribed);
  add("scored by committee", c.scored);
  add("after f1 (thresholds)", c.after_f1);
  add("after f2 (frequency)", c.after_f2);
  add("after f3 (length)", c.after_f3);
  out += "\ncorpus\n";
  add("utterances", s.n_utterances);
  std::snprintf(line, sizeof line, "  %-24s %.3f\n", "total duration (h)", s.total_duration_h);
  out += line;
  add("total words", s.total_words);
  add("unique words", s.unique_words);
  add("sources", s.n_sources);
  add("median words", s.median_words);
  add("median characters", s.median_chars);
  std::snprintf(line, sizeof line, "  %-24s %.2f\n", "median duration (s)", s.median_duration_s);
  out += line;

  std::map<std::string, int> by_stage;
  for (const auto& r : result.rejected) ++by_stage[r.stage];
  if (!by_stage.empty()) {
    out += "\nrejected\n";
    for (const char* stage : {"decode", "duration", "transcribe", "committee", "f1", "f2", "f3"}) {
      if (by_stage.contains(stage)) add(stage, by_stage[stage]);
    }
  }
  return out;
}

}  // namespace corpusforge
