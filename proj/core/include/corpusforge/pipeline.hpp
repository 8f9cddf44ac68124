#ifndef CORPUSFORGE_PIPELINE_HPP_
#define CORPUSFORGE_PIPELINE_HPP_

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpusforge/committee.hpp"
#include "corpusforge/config.hpp"
#include "corpusforge/filters.hpp"
#include "corpusforge/manifest.hpp"

namespace corpusforge {

struct ManifestMeta {
  std::string config_hash;
  int iteration = 0;
  std::string created_at;  // ISO 8601, UTC
};

struct Manifest {
  std::vector<Utterance> records;
  ManifestMeta meta;
};

// Number of items alive after each stage, in pipeline order.
struct StageCounts {
  int64_t files = 0;
  int64_t clips = 0;
  int64_t in_duration = 0;
  int64_t transcribed = 0;
  int64_t scored = 0;
  int64_t after_f1 = 0;
  int64_t after_f2 = 0;
  int64_t after_f3 = 0;

  nlohmann::ordered_json to_json() const;
};

struct RunResult {
  Manifest manifest;
  std::vector<Rejection> rejected;
  StageCounts counts;
  CorpusStats stats;
};

// Turns every *.wav in `input_dir` (sorted by name, not recursive) into
// committee clips: split on silence into
// output_dir/segments/<stem>_<index>_<start_ms>.wav (plus
// output_dir/segments/<stem>.json listing the spans) when segmentation is
// enabled, otherwise used whole. Inputs that are not already 16 kHz mono
// PCM16 get a canonical copy under output_dir/audio/. Unreadable files
// become "decode" rejections.
std::vector<ClipRef> prepare_clips(const PipelineConfig& config, StageCounts& counts,
                                   std::vector<Rejection>& rejected);

// Runs the whole annotation pass with the given committee and writes
// manifest.jsonl, rejected.jsonl, stats.json and report.txt into
// config.output_dir. Zero survivors is not an error. Throws AdapterError
// when one adapter failed on every clip.
RunResult run_iteration(const PipelineConfig& config,
                        std::span<const std::shared_ptr<RecognizerAdapter>> adapters);

// Same, building the committee from config.adapters.
RunResult run_iteration(const PipelineConfig& config);

std::string render_report(const RunResult& result);

}  // namespace corpusforge

#endif  // CORPUSFORGE_PIPELINE_HPP_
