#ifndef CORPUSFORGE_WAV_HPP_
#define CORPUSFORGE_WAV_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "corpusforge/audio.hpp"
#include "corpusforge/resample.hpp"

namespace corpusforge {

struct DecodeOptions {
  int target_rate = kCanonicalSampleRate;
  ResampleQuality quality = ResampleQuality::kSinc;
};

// Raw contents of a WAVE file before any conversion.
struct WavData {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  bool is_float = false;
  // Interleaved, scaled to the PCM16 range.
  std::vector<double> interleaved;
};

// Parses a RIFF/WAVE byte buffer. Accepts PCM 8/16/24/32-bit and IEEE
// float 32-bit, 1 or 2 channels. Throws DataError otherwise.
WavData parse_wav(std::span<const uint8_t> bytes);

// Reads `path`, downmixes to mono (mean of channels, rounded to nearest)
// and resamples to options.target_rate.
AudioClip decode_wav(const std::filesystem::path& path,
                     const DecodeOptions& options = {});

AudioClip decode_wav_bytes(std::span<const uint8_t> bytes,
                           std::string source_path = {},
                           const DecodeOptions& options = {});

// Mono PCM16 encoding of `clip`.
std::vector<uint8_t> encode_wav(const AudioClip& clip);

// Writes encode_wav(clip) to `path` via a temporary file and rename.
void write_wav(const std::filesystem::path& path, const AudioClip& clip);

}  // namespace corpusforge

#endif  // CORPUSFORGE_WAV_HPP_
