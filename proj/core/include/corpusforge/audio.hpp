#ifndef CORPUSFORGE_AUDIO_HPP_
#define CORPUSFORGE_AUDIO_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace corpusforge {

inline constexpr int kCanonicalSampleRate = 16000;

// Mono signed 16-bit PCM with provenance. Duration is derived from the
// sample count so it can never drift from the data.
struct AudioClip {
  std::vector<int16_t> samples;
  int sample_rate = kCanonicalSampleRate;
  std::string source_path;
  int64_t source_offset_ms = 0;

  // round(1000 * len(samples) / sample_rate)
  int64_t duration_ms() const;
  double duration_s() const { return static_cast<double>(duration_ms()) / 1000.0; }
};

struct SilenceConfig {
  double threshold_dbfs = -43.0;
  int min_silence_ms = 800;
  int frame_ms = 10;
  int pad_ms = 150;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Half-open millisecond interval [start_ms, end_ms) into a parent clip.
struct SegmentSpan {
  int64_t start_ms = 0;
  int64_t end_ms = 0;

  int64_t length_ms() const { return end_ms - start_ms; }
  friend bool operator==(const SegmentSpan&, const SegmentSpan&) = default;
};

struct FrameLevel {
  std::size_t frame_index = 0;
  double dbfs = 0.0;
};

// Level reported for an all-zero frame.
inline constexpr double kSilentFrameDbfs = -std::numeric_limits<double>::infinity();

// RMS level of each non-overlapping frame_ms frame relative to PCM16 full
// scale (32768). A trailing partial frame is measured over the samples it has.
std::vector<FrameLevel> frame_dbfs(const AudioClip& clip, int frame_ms);

// Maximal runs of frames below cfg.threshold_dbfs lasting at least
// cfg.min_silence_ms, sorted and non-overlapping.
std::vector<SegmentSpan> detect_silence(const AudioClip& clip,
                                        const SilenceConfig& cfg);

// Spans of the non-silent regions, each widened by up to pad_ms into the
// bounding silence. Empty when the clip is entirely silent.
std::vector<SegmentSpan> segment_spans(const AudioClip& clip,
                                       const SilenceConfig& cfg);

// Cuts `clip` into the spans returned by segment_spans. Each piece carries
// source_offset_ms relative to the original file.
std::vector<AudioClip> split_on_silence(const AudioClip& clip,
                                        const SilenceConfig& cfg);

// Copies the samples of `span` out of `clip`.
AudioClip slice(const AudioClip& clip, const SegmentSpan& span);

// Keeps clips with min_s <= duration <= max_s (closed interval).
std::vector<AudioClip> duration_filter(std::span<const AudioClip> clips,
                                       double min_s = 1.5,
                                       double max_s = 15.0);

inline bool duration_in_range(int64_t duration_ms, double min_s, double max_s) {
  // Compare in integer milliseconds so that 1.5 s == 1500 ms exactly.
  const auto lo = static_cast<int64_t>(std::llround(min_s * 1000.0));
  const auto hi = static_cast<int64_t>(std::llround(max_s * 1000.0));
  return duration_ms >= lo && duration_ms <= hi;
}

}  // namespace corpusforge

#endif  // CORPUSFORGE_AUDIO_HPP_
