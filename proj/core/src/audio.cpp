#include "corpusforge/audio.hpp"

#include <algorithm>
#include <cmath>

#include "corpusforge/error.hpp"

namespace corpusforge {
namespace {

constexpr double kFullScale = 32768.0;

std::size_t ms_to_sample(int64_t ms, int sample_rate) {
  return static_cast<std::size_t>(ms * sample_rate / 1000);
}

}  // namespace

int64_t AudioClip::duration_ms() const {
  if (sample_rate <= 0) return 0;
  return static_cast<int64_t>(
      std::llround(1000.0 * static_cast<double>(samples.size()) / sample_rate));
}

void SilenceConfig::validate() const {
  if (!(threshold_dbfs < 0.0)) {
    throw ConfigError("silence.threshold_dbfs", "must be negative");
  }
  if (frame_ms <= 0) throw ConfigError("silence.frame_ms", "must be positive");
  if (min_silence_ms <= frame_ms) {
    throw ConfigError("silence.min_silence_ms", "must exceed frame_ms");
  }
  if (pad_ms < 0) throw ConfigError("silence.pad_ms", "must be non-negative");
  // Wider padding could re-introduce a qualifying silence run into a segment.
  if (pad_ms >= min_silence_ms) {
    throw ConfigError("silence.pad_ms", "must be smaller than min_silence_ms");
  }
}

std::vector<FrameLevel> frame_dbfs(const AudioClip& clip, int frame_ms) {
  if (frame_ms < 1) throw ConfigError("frame_ms", "must be at least 1");
  std::vector<FrameLevel> levels;
  const std::size_t total = clip.samples.size();
  for (std::size_t frame = 0;; ++frame) {
    const std::size_t begin = ms_to_sample(static_cast<int64_t>(frame) * frame_ms, clip.sample_rate);
    if (begin >= total) break;
    const std::size_t end = std::min(
        total, ms_to_sample(static_cast<int64_t>(frame + 1) * frame_ms, clip.sample_rate));
    double energy = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double s = clip.samples[i];
      energy += s * s;
    }
    const double rms = std::sqrt(energy / static_cast<double>(end - begin));
    levels.push_back({frame, rms > 0.0 ? 20.0 * std::log10(rms / kFullScale)
                                       : kSilentFrameDbfs});
  }
  return levels;
}

std::vector<SegmentSpan> detect_silence(const AudioClip& clip, const SilenceConfig& cfg) {
  cfg.validate();
  const auto levels = frame_dbfs(clip, cfg.frame_ms);
  const int64_t duration = clip.duration_ms();
  std::vector<SegmentSpan> runs;

  auto close_run = [&](std::size_t first, std::size_t last) {
    SegmentSpan span{static_cast<int64_t>(first) * cfg.frame_ms,
                     std::min<int64_t>(static_cast<int64_t>(last) * cfg.frame_ms, duration)};
    if (span.length_ms() >= cfg.min_silence_ms) runs.push_back(span);
  };

  std::size_t run_start = 0;
  bool in_run = false;
  for (const auto& level : levels) {
    const bool silent = level.dbfs < cfg.threshold_dbfs;
    if (silent && !in_run) {
      run_start = level.frame_index;
      in_run = true;
    } else if (!silent && in_run) {
      close_run(run_start, level.frame_index);
      in_run = false;
    }
  }
  if (in_run) close_run(run_start, levels.size());
  return runs;
}

std::vector<SegmentSpan> segment_spans(const AudioClip& clip, const SilenceConfig& cfg) {
  const auto silences = detect_silence(clip, cfg);
  const int64_t duration = clip.duration_ms();
  std::vector<SegmentSpan> speech;

  int64_t cursor = 0;
  for (const auto& run : silences) {
    if (run.start_ms > cursor) speech.push_back({cursor, run.start_ms});
    cursor = run.end_ms;
  }
  if (cursor < duration) speech.push_back({cursor, duration});

  // Pad into the bounding silence. A run shared by two segments is split so
  // the padded segments cannot overlap.
  std::vector<SegmentSpan> padded;
  padded.reserve(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i) {
    SegmentSpan span = speech[i];
    if (span.start_ms > 0) {
      const int64_t gap = span.start_ms - (i > 0 ? speech[i - 1].end_ms : 0);
      const int64_t room = i > 0 ? gap / 2 : gap;
      span.start_ms -= std::min<int64_t>(cfg.pad_ms, room);
    }
    if (span.end_ms < duration) {
      const int64_t gap = (i + 1 < speech.size() ? speech[i + 1].start_ms : duration) - span.end_ms;
      const int64_t room = i + 1 < speech.size() ? gap / 2 : gap;
      span.end_ms += std::min<int64_t>(cfg.pad_ms, room);
    }
    padded.push_back(span);
  }
  return padded;
}

AudioClip slice(const AudioClip& clip, const SegmentSpan& span) {
  AudioClip piece;
  piece.sample_rate = clip.sample_rate;
  piece.source_path = clip.source_path;
  piece.source_offset_ms = clip.source_offset_ms + span.start_ms;
  const std::size_t begin = std::min(clip.samples.size(), ms_to_sample(span.start_ms, clip.sample_rate));
  const std::size_t end = std::min(clip.samples.size(), ms_to_sample(span.end_ms, clip.sample_rate));
  piece.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                       clip.samples.begin() + static_cast<std::ptrdiff_t>(std::max(begin, end)));
  return piece;
}

std::vector<AudioClip> split_on_silence(const AudioClip& clip, const SilenceConfig& cfg) {
  std::vector<AudioClip> pieces;
  for (const auto& span : segment_spans(clip, cfg)) pieces.push_back(slice(clip, span));
  return pieces;
}

std::vector<AudioClip> duration_filter(std::span<const AudioClip> clips, double min_s,
                                       double max_s) {
  if (!(min_s < max_s)) throw ConfigError("duration.min_s", "must be below max_s");
  std::vector<AudioClip> kept;
  for (const auto& clip : clips) {
    if (duration_in_range(clip.duration_ms(), min_s, max_s)) kept.push_back(clip);
  }
  return kept;
}

}  // namespace corpusforge
