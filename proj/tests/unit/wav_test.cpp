#include "corpusforge/wav.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>

#include <gtest/gtest.h>

#include "corpusforge/error.hpp"
#include "corpusforge/io.hpp"
#include "fixtures.hpp"

namespace corpusforge {
namespace {

void put(std::vector<uint8_t>& b, uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) b.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<uint8_t>& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

std::vector<uint8_t> make_wav(uint16_t tag, int channels, int rate, int bits,
                              const std::vector<uint8_t>& data, bool extensible = false) {
  std::vector<uint8_t> fmt;
  put(fmt, extensible ? 0xFFFE : tag, 2);
  put(fmt, static_cast<uint32_t>(channels), 2);
  put(fmt, static_cast<uint32_t>(rate), 4);
  put(fmt, static_cast<uint32_t>(rate * channels * bits / 8), 4);
  put(fmt, static_cast<uint32_t>(channels * bits / 8), 2);
  put(fmt, static_cast<uint32_t>(bits), 2);
  if (extensible) {
    put(fmt, 22, 2);
    put(fmt, static_cast<uint32_t>(bits), 2);
    put(fmt, 0, 4);
    put(fmt, tag, 2);
    const uint8_t guid_tail[14] = {0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
                                   0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};
    fmt.insert(fmt.end(), guid_tail, guid_tail + 14);
  }
  std::vector<uint8_t> out;
  put_tag(out, "RIFF");
  put(out, static_cast<uint32_t>(4 + 8 + fmt.size() + 8 + data.size()), 4);
  put_tag(out, "WAVE");
  // An unrelated chunk before fmt must be skipped.
  put_tag(out, "LIST");
  put(out, 4, 4);
  put_tag(out, "INFO");
  put_tag(out, "fmt ");
  put(out, static_cast<uint32_t>(fmt.size()), 4);
  out.insert(out.end(), fmt.begin(), fmt.end());
  put_tag(out, "data");
  put(out, static_cast<uint32_t>(data.size()), 4);
  out.insert(out.end(), data.begin(), data.end());
  return out;
}

std::vector<uint8_t> pcm16(const std::vector<int16_t>& s) {
  std::vector<uint8_t> b;
  for (int16_t v : s) put(b, static_cast<uint16_t>(v), 2);
  return b;
}

TEST(DecodeWav, CanonicalFileIsIdentity) {
  fixtures::TempDir dir;
  fixtures::write_pcm16(dir / "z.wav", fixtures::zeros(1000), 16000, 1);
  const AudioClip clip = decode_wav(dir / "z.wav");
  EXPECT_EQ(clip.samples.size(), 16000u);
  EXPECT_EQ(clip.duration_ms(), 1000);
  EXPECT_EQ(clip.sample_rate, 16000);
  EXPECT_EQ(clip.source_path, (dir / "z.wav").string());
}

TEST(DecodeWav, EightKilohertzDoublesSampleCount) {
  fixtures::TempDir dir;
  const auto src = fixtures::tone(1237, -20.0, 440.0, 8000);
  fixtures::write_pcm16(dir / "n.wav", src, 8000, 1);
  const AudioClip clip = decode_wav(dir / "n.wav");
  EXPECT_NEAR(static_cast<double>(clip.samples.size()), 2.0 * static_cast<double>(src.size()), 1.0);
  // Even output samples sit on the input grid; a band-limited tone passes
  // through nearly unchanged.
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 200; i + 200 < src.size(); ++i) {
    const double d = clip.samples[2 * i] - src[i];
    err += d * d;
    ref += static_cast<double>(src[i]) * src[i];
  }
  EXPECT_LT(std::sqrt(err / ref), 1e-3);
}

TEST(DecodeWav, StereoDownmixIsMean) {
  std::vector<int16_t> lr;
  for (int i = 0; i < 1600; ++i) {
    lr.push_back(100);
    lr.push_back(-100);
  }
  AudioClip clip = decode_wav_bytes(make_wav(1, 2, 16000, 16, pcm16(lr)));
  ASSERT_EQ(clip.samples.size(), 1600u);
  for (int16_t s : clip.samples) EXPECT_EQ(s, 0);

  clip = decode_wav_bytes(make_wav(1, 2, 16000, 16, pcm16({3, 4, -3, -4})));
  // (3 + 4) / 2 = 3.5 rounds away from zero.
  EXPECT_EQ(clip.samples, (std::vector<int16_t>{4, -4}));
}

TEST(DecodeWav, OtherSampleFormats) {
  // 8-bit unsigned: 128 is zero, 255 is near full scale.
  AudioClip c = decode_wav_bytes(make_wav(1, 1, 16000, 8, {128, 255, 0}));
  EXPECT_EQ(c.samples, (std::vector<int16_t>{0, 32512, -32768}));

  // 24-bit: 0x400000 is half scale.
  c = decode_wav_bytes(make_wav(1, 1, 16000, 24, {0x00, 0x00, 0x40, 0x00, 0x00, 0xC0}));
  EXPECT_EQ(c.samples, (std::vector<int16_t>{16384, -16384}));

  // 32-bit float.
  std::vector<uint8_t> f;
  for (float v : {0.5f, -0.25f, 2.0f}) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put(f, bits, 4);
  }
  c = decode_wav_bytes(make_wav(3, 1, 16000, 32, f));
  EXPECT_EQ(c.samples, (std::vector<int16_t>{16384, -8192, 32767}));

  // WAVE_FORMAT_EXTENSIBLE wrapping PCM16.
  c = decode_wav_bytes(make_wav(1, 1, 16000, 16, pcm16({7, -7}), true));
  EXPECT_EQ(c.samples, (std::vector<int16_t>{7, -7}));
}

TEST(DecodeWav, RejectsMalformedInput) {
  EXPECT_THROW(decode_wav_bytes(std::vector<uint8_t>{'R', 'I', 'F'}), DataError);
  auto bytes = make_wav(1, 1, 16000, 16, pcm16({1, 2}));
  bytes[0] = 'X';
  EXPECT_THROW(decode_wav_bytes(bytes), DataError);
  EXPECT_THROW(decode_wav_bytes(make_wav(0x55, 1, 16000, 16, pcm16({1, 2}))), DataError);
  EXPECT_THROW(decode_wav_bytes(make_wav(1, 1, 16000, 16, {})), DataError);
  EXPECT_THROW(decode_wav_bytes(make_wav(1, 3, 16000, 16, pcm16({1, 2, 3}))), DataError);
  EXPECT_THROW(decode_wav("/nonexistent/file.wav"), DataError);
}

TEST(EncodeWav, RoundTrip) {
  fixtures::TempDir dir;
  AudioClip clip;
  clip.samples = fixtures::tone(250, -10.0);
  write_wav(dir / "sub" / "out.wav", clip);
  const auto bytes = read_file_bytes(dir / "sub" / "out.wav");
  EXPECT_EQ(bytes.size(), 44 + clip.samples.size() * 2);
  const WavData raw = parse_wav(bytes);
  EXPECT_EQ(raw.sample_rate, 16000);
  EXPECT_EQ(raw.channels, 1);
  EXPECT_EQ(raw.bits_per_sample, 16);
  EXPECT_EQ(decode_wav(dir / "sub" / "out.wav").samples, clip.samples);
  // No temporary file is left behind.
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir / "sub"),
                          std::filesystem::directory_iterator()),
            1);
}

}  // namespace
}  // namespace corpusforge
