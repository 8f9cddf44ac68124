#ifndef CORPUSFORGE_TESTS_FIXTURES_HPP_
#define CORPUSFORGE_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Sine of the given RMS level in dBFS (full scale 32768).
std::vector<int16_t> tone(int64_t ms, double dbfs, double freq_hz = 440.0, int rate = 16000);
std::vector<int16_t> zeros(int64_t ms, int rate = 16000);
void append(std::vector<int16_t>& dst, const std::vector<int16_t>& src);

// Minimal RIFF writer, independent of the library's encoder.
void write_pcm16(const std::filesystem::path& path, const std::vector<int16_t>& interleaved,
                 int rate, int channels);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Random text biased toward what the normalizer treats specially: digits,
// currency and percent signs, ordinal suffixes, abbreviations, accented
// Latin, other scripts, emoji and the odd malformed UTF-8 byte.
std::string random_text(std::mt19937_64& rng, std::size_t max_pieces = 12);

// Directory holding the committed test data (tests/data).
std::filesystem::path data_dir();

// Mini-corpus description from tests/data/minicorpus/clips.json rendered as
// WAV files into `dir`.
void render_minicorpus(const std::filesystem::path& dir);

}  // namespace fixtures

#endif  // CORPUSFORGE_TESTS_FIXTURES_HPP_
