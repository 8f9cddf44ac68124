#include "cli.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corpusforge/adapters.hpp"
#include "corpusforge/audio.hpp"
#include "corpusforge/config.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/filters.hpp"
#include "corpusforge/io.hpp"
#include "corpusforge/itn.hpp"
#include "corpusforge/logging.hpp"
#include "corpusforge/manifest.hpp"
#include "corpusforge/metrics.hpp"
#include "corpusforge/pipeline.hpp"
#include "corpusforge/textnorm.hpp"
#include "corpusforge/wav.hpp"

namespace corpusforge::cli {

namespace {

namespace fs = std::filesystem;

struct SegmentArgs {
  std::vector<std::string> inputs;
  std::string out_dir;
  std::optional<double> threshold_dbfs;
  std::optional<int> min_silence_ms;
  std::optional<int> frame_ms;
  std::optional<int> pad_ms;
  std::string resampler = "sinc";
};

struct TextArgs {
  std::string rules;
  bool warnings = false;
};

struct ScoreArgs {
  std::string refs;
  std::string hyps;
  std::string system;
  bool normalize = false;
  unsigned threads = 0;
};

struct RunArgs {
  std::string config;
  std::string input_dir;
  std::string output_dir;
  std::optional<int> iteration;
  std::optional<double> alpha;
  std::optional<double> max_er;
  std::optional<double> max_wer;
  std::optional<double> max_cer;
  std::optional<double> trainee_min_wer;
  std::optional<double> trainee_min_cer;
  std::string trainee_combine;
  std::optional<int> max_per_signature;
  bool segment = false;
  bool reports = false;
};

struct StatsArgs {
  std::string manifest;
};

NormRules load_rules(const std::string& path) {
  if (path.empty()) return NormRules::defaults();
  try {
    return NormRules::load(path);
  } catch (const DataError& e) {
    throw ConfigError("rules", e.what());
  }
}

int cmd_segment(const SegmentArgs& a, std::ostream& out) {
  SilenceConfig cfg;
  if (a.threshold_dbfs) cfg.threshold_dbfs = *a.threshold_dbfs;
  if (a.min_silence_ms) cfg.min_silence_ms = *a.min_silence_ms;
  if (a.frame_ms) cfg.frame_ms = *a.frame_ms;
  if (a.pad_ms) cfg.pad_ms = *a.pad_ms;
  cfg.validate();
  const DecodeOptions decode{kCanonicalSampleRate,
                             a.resampler == "linear" ? ResampleQuality::kLinear : ResampleQuality::kSinc};
  const fs::path out_dir(a.out_dir);
  for (const auto& input : a.inputs) {
    const fs::path path(input);
    const AudioClip clip = decode_wav(path, decode);
    const auto spans = segment_spans(clip, cfg);
    const std::string stem = path.stem().string();
    nlohmann::ordered_json sidecar;
    sidecar["source"] = path.filename().string();
    sidecar["duration_ms"] = clip.duration_ms();
    sidecar["segments"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const std::string name = stem + "_" + std::to_string(i) + "_" + std::to_string(spans[i].start_ms);
      const fs::path file = out_dir / (name + ".wav");
      write_wav(file, slice(clip, spans[i]));
      nlohmann::ordered_json seg = {{"index", i},
                                    {"file", name + ".wav"},
                                    {"start_ms", spans[i].start_ms},
                                    {"end_ms", spans[i].end_ms}};
      sidecar["segments"].push_back(seg);
      out << nlohmann::ordered_json{{"id", name},
                                    {"audio", file.generic_string()},
                                    {"source", stem},
                                    {"start_ms", spans[i].start_ms},
                                    {"end_ms", spans[i].end_ms},
                                    {"duration_ms", spans[i].length_ms()}}
                 .dump()
          << '\n';
    }
    write_file_atomic(out_dir / (stem + ".json"), sidecar.dump(2) + "\n");
    log_info(input + ": " + std::to_string(spans.size()) + " segments");
  }
  return kExitOk;
}

int cmd_normalize(const TextArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const Normalizer normalizer(load_rules(a.rules));
  std::string line;
  std::vector<NormWarning> warnings;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    warnings.clear();
    out << normalizer(line, a.warnings ? &warnings : nullptr).text << '\n';
    for (const auto& w : warnings) {
      auto j = w.to_json();
      j["line"] = line_no;
      err << j.dump() << '\n';
    }
  }
  return kExitOk;
}

int cmd_itn(const TextArgs& a, std::istream& in, std::ostream& out) {
  const ItnRules rules = ItnRules::from_norm_rules(load_rules(a.rules));
  std::string line;
  while (std::getline(in, line)) out << inverse_normalize(line, rules) << '\n';
  return kExitOk;
}

int cmd_score(const ScoreArgs& a, std::ostream& out) {
  const auto refs = read_manifest(a.refs);
  const auto hyps = read_manifest(a.hyps);
  std::map<std::string, std::string> hyp_by_id;
  for (const auto& h : hyps) {
    if (!hyp_by_id.emplace(h.clip_id, h.transcript.text).second) {
      throw DataError(a.hyps + ": duplicate id " + h.clip_id);
    }
  }
  const Normalizer normalizer;
  auto prep = [&](const std::string& s) { return a.normalize ? normalizer(s).text : s; };
  std::vector<std::string> texts;
  texts.reserve(refs.size() * 2);
  int missing = 0;
  for (const auto& r : refs) {
    const auto it = hyp_by_id.find(r.clip_id);
    if (it == hyp_by_id.end()) ++missing;
    texts.push_back(prep(r.transcript.text));
    texts.push_back(it == hyp_by_id.end() ? std::string() : prep(it->second));
  }
  if (missing > 0) {
    log_warn(std::to_string(missing) + " reference ids have no hypothesis; scored as empty");
  }
  std::vector<RefHypPair> pairs;
  pairs.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) pairs.push_back({texts[2 * i], texts[2 * i + 1]});
  const CorpusRates rates = corpus_rates(pairs, a.threads);
  const std::string system = a.system.empty() ? fs::path(a.hyps).stem().string() : a.system;
  nlohmann::ordered_json report = {{"system", system},
                                   {"wer", rates.wer},
                                   {"cer", rates.cer},
                                   {"n_utts", rates.n_utts}};
  out << report.dump() << '\n';
  return kExitOk;
}

PipelineConfig load_run_config(const RunArgs& a) {
  PipelineConfig c = PipelineConfig::load(a.config);
  if (!a.input_dir.empty()) c.input_dir = fs::absolute(a.input_dir).lexically_normal();
  if (!a.output_dir.empty()) c.output_dir = fs::absolute(a.output_dir).lexically_normal();
  if (a.iteration) c.iteration = *a.iteration;
  if (a.alpha) c.alpha = *a.alpha;
  if (a.max_er) c.thresholds.max_er = *a.max_er;
  if (a.max_wer) c.thresholds.max_wer = *a.max_wer;
  if (a.max_cer) c.thresholds.max_cer = *a.max_cer;
  if (a.trainee_min_wer) c.thresholds.trainee_min_wer = *a.trainee_min_wer;
  if (a.trainee_min_cer) c.thresholds.trainee_min_cer = *a.trainee_min_cer;
  if (a.trainee_combine == "any") c.thresholds.trainee_combine = TraineeCombine::kAny;
  if (a.trainee_combine == "all") c.thresholds.trainee_combine = TraineeCombine::kAll;
  if (a.max_per_signature) c.frequency.max_per_signature = *a.max_per_signature;
  if (a.segment) c.segment = true;
  c.validate();
  return c;
}

int cmd_transcribe(const RunArgs& a, std::ostream& out) {
  const PipelineConfig c = load_run_config(a);
  std::vector<std::shared_ptr<RecognizerAdapter>> adapters;
  for (const auto& spec : c.adapters) adapters.push_back(make_adapter(spec));
  StageCounts counts;
  std::vector<Rejection> rejected;
  const auto clips = prepare_clips(c, counts, rejected);
  const Normalizer normalizer(c.norm_rules);
  const auto result = transcribe_all(clips, adapters, normalizer, {c.max_in_flight});
  for (const auto& h : result.hypotheses) {
    nlohmann::ordered_json line;
    line["id"] = h.clip_id;
    line["transcripts"] = nlohmann::ordered_json::object();
    for (const auto& [id, text] : h.transcripts) line["transcripts"][id.name] = text.text;
    if (a.reports && !h.has_empty()) line["report"] = relative_rates(h, c.alpha).to_json();
    out << line.dump() << '\n';
  }
  for (const auto& f : result.failures) {
    log_warn("clip " + f.clip_id + ": " + f.recognizer + ": " + f.reason);
  }
  return kExitOk;
}

int cmd_annotate(const RunArgs& a, std::ostream& out) {
  const PipelineConfig c = load_run_config(a);
  const RunResult result = run_iteration(c);
  nlohmann::ordered_json summary;
  summary["manifest"] = (c.output_dir / "manifest.jsonl").generic_string();
  summary["config_hash"] = result.manifest.meta.config_hash;
  summary["iteration"] = result.manifest.meta.iteration;
  summary["counts"] = result.counts.to_json();
  summary["stats"] = result.stats.to_json();
  out << summary.dump() << '\n';
  return kExitOk;
}

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const auto records = read_manifest(a.manifest);
  out << corpus_stats(records).to_json().dump() << '\n';
  return kExitOk;
}

void add_run_flags(CLI::App* sub, RunArgs& a) {
  sub->add_option("--config", a.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--input", a.input_dir, "Override input_dir");
  sub->add_option("--output", a.output_dir, "Override output_dir");
  sub->add_option("--iteration", a.iteration, "Override iteration");
  sub->add_option("--alpha", a.alpha, "Weight of WER in the combined rate");
  sub->add_option("--max-er", a.max_er);
  sub->add_option("--max-wer", a.max_wer);
  sub->add_option("--max-cer", a.max_cer);
  sub->add_option("--trainee-min-wer", a.trainee_min_wer);
  sub->add_option("--trainee-min-cer", a.trainee_min_cer);
  sub->add_option("--trainee-combine", a.trainee_combine)->check(CLI::IsMember({"any", "all"}));
  sub->add_option("--max-per-signature", a.max_per_signature);
  sub->add_flag("--segment", a.segment, "Split inputs on silence first");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  init_logging_from_env();
  CLI::App app{"Speech corpus curation: segmentation, normalization, scoring and committee annotation",
               "corpusforge"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "Split recordings on silence");
  segment->add_option("inputs", seg.inputs, "WAV files")->required()->check(CLI::ExistingFile);
  segment->add_option("--out-dir", seg.out_dir, "Directory for segment files")->required();
  segment->add_option("--threshold-dbfs", seg.threshold_dbfs);
  segment->add_option("--min-silence-ms", seg.min_silence_ms);
  segment->add_option("--frame-ms", seg.frame_ms);
  segment->add_option("--pad-ms", seg.pad_ms);
  segment->add_option("--resampler", seg.resampler)->check(CLI::IsMember({"sinc", "linear"}));

  TextArgs norm_args;
  auto* normalize = app.add_subcommand("normalize", "Normalize transcripts, one per stdin line");
  normalize->add_option("--rules", norm_args.rules, "Rules file (JSON)")->check(CLI::ExistingFile);
  normalize->add_flag("--warnings", norm_args.warnings, "Report dubious input as JSON on stderr");

  TextArgs itn_args;
  auto* itn = app.add_subcommand("itn", "Restore written special terms, one per stdin line");
  itn->add_option("--rules", itn_args.rules, "Rules file (JSON)")->check(CLI::ExistingFile);

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Pooled WER/CER of a hypothesis manifest");
  score->add_option("--refs", score_args.refs)->required()->check(CLI::ExistingFile);
  score->add_option("--hyps", score_args.hyps)->required()->check(CLI::ExistingFile);
  score->add_option("--system", score_args.system, "Name reported in the output");
  score->add_flag("--normalize", score_args.normalize, "Normalize both sides first");
  score->add_option("--threads", score_args.threads, "Worker threads (0 = all cores)");

  RunArgs transcribe_args;
  auto* transcribe = app.add_subcommand("transcribe", "Run the committee and print hypotheses");
  add_run_flags(transcribe, transcribe_args);
  transcribe->add_flag("--reports", transcribe_args.reports, "Include relative error reports");

  RunArgs annotate_args;
  auto* annotate = app.add_subcommand("annotate", "Run one annotation iteration");
  add_run_flags(annotate, annotate_args);

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Corpus statistics of a manifest");
  stats->add_option("manifest", stats_args.manifest)->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (*segment) return cmd_segment(seg, out);
    if (*normalize) return cmd_normalize(norm_args, in, out, err);
    if (*itn) return cmd_itn(itn_args, in, out);
    if (*score) return cmd_score(score_args, out);
    if (*transcribe) return cmd_transcribe(transcribe_args, out);
    if (*annotate) return cmd_annotate(annotate_args, out);
    if (*stats) return cmd_stats(stats_args, out);
  } catch (const ConfigError& e) {
    err << "error: invalid setting " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace corpusforge::cli
