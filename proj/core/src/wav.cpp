#include "corpusforge/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "corpusforge/error.hpp"
#include "corpusforge/io.hpp"

namespace corpusforge {
namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

  void need(std::size_t n) const {
    if (remaining() < n) throw DataError("wav: truncated file");
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = static_cast<uint32_t>(bytes_[pos_]) |
                 (static_cast<uint32_t>(bytes_[pos_ + 1]) << 8) |
                 (static_cast<uint32_t>(bytes_[pos_ + 2]) << 16) |
                 (static_cast<uint32_t>(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  bool tag(const char (&expected)[5]) {
    need(4);
    const bool ok = std::memcmp(&bytes_[pos_], expected, 4) == 0;
    pos_ += 4;
    return ok;
  }
  std::string fourcc() {
    need(4);
    std::string s(reinterpret_cast<const char*>(&bytes_[pos_]), 4);
    pos_ += 4;
    return s;
  }
  void skip(std::size_t n) { pos_ += std::min(n, remaining()); }

 private:
  std::span<const uint8_t> bytes_;
  std::size_t pos_ = 0;
};

double read_sample(const uint8_t* p, int bits, bool is_float) {
  if (is_float) {
    float f;
    std::memcpy(&f, p, sizeof f);
    return static_cast<double>(f) * 32768.0;
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) * 256.0;
    case 16:
      return static_cast<int16_t>(p[0] | (p[1] << 8));
    case 24: {
      int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;
      return v / 256.0;
    }
    case 32: {
      int32_t v;
      std::memcpy(&v, p, sizeof v);
      return v / 65536.0;
    }
  }
  return 0.0;
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

WavData parse_wav(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 12 || !r.tag("RIFF")) throw DataError("wav: missing RIFF header");
  r.u32();
  if (!r.tag("WAVE")) throw DataError("wav: not a WAVE file");

  WavData wav;
  bool have_fmt = false;
  std::span<const uint8_t> data;
  bool have_data = false;
  while (r.remaining() >= 8) {
    const std::string id = r.fourcc();
    const uint32_t size = r.u32();
    const std::size_t start = r.position();
    if (id == "fmt ") {
      uint16_t format = r.u16();
      wav.channels = r.u16();
      wav.sample_rate = static_cast<int>(r.u32());
      r.u32();  // byte rate
      r.u16();  // block align
      wav.bits_per_sample = r.u16();
      if (format == kFormatExtensible && size >= 40) {
        r.u16();  // cbSize
        r.u16();  // valid bits
        r.u32();  // channel mask
        format = r.u16();  // leading two bytes of the subformat GUID
      }
      if (format == kFormatFloat) {
        wav.is_float = true;
      } else if (format != kFormatPcm) {
        throw DataError("wav: unsupported compression tag " + std::to_string(format));
      }
      have_fmt = true;
    } else if (id == "data") {
      const std::size_t available = std::min<std::size_t>(size, r.remaining());
      data = bytes.subspan(start, available);
      have_data = true;
    }
    const std::size_t consumed = r.position() - start;
    const std::size_t padded = size + (size & 1u);
    if (padded > consumed) r.skip(padded - consumed);
    if (have_data && have_fmt) break;
  }

  if (!have_fmt) throw DataError("wav: missing fmt chunk");
  if (!have_data) throw DataError("wav: missing data chunk");
  if (wav.channels < 1 || wav.channels > 2) {
    throw DataError("wav: unsupported channel count " + std::to_string(wav.channels));
  }
  if (wav.sample_rate <= 0) throw DataError("wav: invalid sample rate");
  const int bits = wav.bits_per_sample;
  if (wav.is_float ? bits != 32 : (bits != 8 && bits != 16 && bits != 24 && bits != 32)) {
    throw DataError("wav: unsupported bit depth " + std::to_string(bits));
  }
  const std::size_t frame_bytes = static_cast<std::size_t>(bits / 8) * wav.channels;
  const std::size_t frames = data.size() / frame_bytes;
  if (frames == 0) throw DataError("wav: zero-length data chunk");

  wav.interleaved.resize(frames * wav.channels);
  const uint8_t* p = data.data();
  for (std::size_t i = 0; i < wav.interleaved.size(); ++i, p += bits / 8) {
    wav.interleaved[i] = read_sample(p, bits, wav.is_float);
  }
  return wav;
}

AudioClip decode_wav_bytes(std::span<const uint8_t> bytes, std::string source_path,
                           const DecodeOptions& options) {
  const WavData wav = parse_wav(bytes);
  const std::size_t frames = wav.interleaved.size() / wav.channels;
  std::vector<double> mono(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double sum = 0.0;
    for (int c = 0; c < wav.channels; ++c) sum += wav.interleaved[i * wav.channels + c];
    mono[i] = std::round(sum / wav.channels);
  }
  const auto converted = resample(std::span<const double>(mono), wav.sample_rate,
                                  options.target_rate, options.quality);
  AudioClip clip;
  clip.sample_rate = options.target_rate;
  clip.source_path = std::move(source_path);
  clip.samples.resize(converted.size());
  std::transform(converted.begin(), converted.end(), clip.samples.begin(), [](double v) {
    return static_cast<int16_t>(std::clamp(std::lround(v), -32768L, 32767L));
  });
  return clip;
}

AudioClip decode_wav(const std::filesystem::path& path, const DecodeOptions& options) {
  const auto bytes = read_file_bytes(path);
  return decode_wav_bytes(bytes, path.string(), options);
}

std::vector<uint8_t> encode_wav(const AudioClip& clip) {
  const auto data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  std::vector<uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<uint32_t>(clip.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (int16_t s : clip.samples) put_u16(out, static_cast<uint16_t>(s));
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip) {
  write_file_atomic(path, encode_wav(clip));
}

}  // namespace corpusforge
