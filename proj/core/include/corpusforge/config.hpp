#ifndef CORPUSFORGE_CONFIG_HPP_
#define CORPUSFORGE_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpusforge/adapters.hpp"
#include "corpusforge/audio.hpp"
#include "corpusforge/filters.hpp"
#include "corpusforge/resample.hpp"
#include "corpusforge/textnorm.hpp"

namespace corpusforge {

// Everything one annotation run needs. Loaded from a JSON file:
//
//   {
//     "input_dir": "clips", "output_dir": "out", "iteration": 1,
//     "segmentation": {"enabled": false, "threshold_dbfs": -43.0, ...},
//     "duration": {"min_s": 1.5, "max_s": 15.0},
//     "committee": {"alpha": 0.5, "max_in_flight": 4},
//     "thresholds": {"max_er": 0.2, ...},
//     "frequency": {"max_per_signature": 20, "stopwords": [...]},
//     "length": {"min_chars": 18},
//     "textnorm": {...} or "textnorm": "rules.json",
//     "adapters": [{"name": "aws", "type": "cached", "priority": 0,
//                   "path": "hyps/aws.jsonl"}, ...]
//   }
//
// Relative paths resolve against the config file's directory. Unknown keys
// are errors.
struct PipelineConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  int iteration = 1;

  bool segment = false;
  SilenceConfig silence;
  ResampleQuality resample_quality = ResampleQuality::kSinc;

  // Prefilter applied before any recognizer runs.
  double min_duration_s = 1.5;
  double max_duration_s = 15.0;

  double alpha = 0.5;
  unsigned max_in_flight = 4;

  ThresholdConfig thresholds;
  FrequencyConfig frequency = FrequencyConfig::defaults();
  LengthConfig length;
  NormRules norm_rules = NormRules::defaults();

  std::vector<AdapterSpec> adapters;

  // Throws ConfigError naming the offending field. The adapter list is
  // skipped when the caller supplies its own committee.
  void validate(bool check_adapters = true) const;

  // Canonical JSON of the effective settings; hash() digests it.
  nlohmann::ordered_json to_json() const;
  std::string hash() const;

  static PipelineConfig from_json(const nlohmann::json& config,
                                  const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);
};

}  // namespace corpusforge

#endif  // CORPUSFORGE_CONFIG_HPP_
