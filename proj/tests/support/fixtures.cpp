#include "fixtures.hpp"

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#ifndef CORPUSFORGE_TEST_DATA_DIR
#error "CORPUSFORGE_TEST_DATA_DIR must be defined"
#endif

namespace fixtures {

TempDir::TempDir() {
  std::string pattern = (std::filesystem::temp_directory_path() / "corpusforge-XXXXXX").string();
  if (!::mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::vector<int16_t> tone(int64_t ms, double dbfs, double freq_hz, int rate) {
  const auto n = static_cast<std::size_t>(ms * rate / 1000);
  const double amplitude = 32768.0 * std::pow(10.0, dbfs / 20.0) * std::numbers::sqrt2;
  std::vector<int16_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<int16_t>(
        std::lround(amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / rate)));
  }
  return out;
}

std::vector<int16_t> zeros(int64_t ms, int rate) {
  return std::vector<int16_t>(static_cast<std::size_t>(ms * rate / 1000), 0);
}

void append(std::vector<int16_t>& dst, const std::vector<int16_t>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

namespace {

void put_u32(std::ofstream& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::ofstream& out, uint16_t v) {
  out.put(static_cast<char>(v & 0xFF));
  out.put(static_cast<char>(v >> 8));
}

}  // namespace

void write_pcm16(const std::filesystem::path& path, const std::vector<int16_t>& interleaved, int rate,
                 int channels) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  const auto data_bytes = static_cast<uint32_t>(interleaved.size() * 2);
  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, static_cast<uint16_t>(channels));
  put_u32(out, static_cast<uint32_t>(rate));
  put_u32(out, static_cast<uint32_t>(rate * channels * 2));
  put_u16(out, static_cast<uint16_t>(channels * 2));
  put_u16(out, 16);
  out.write("data", 4);
  put_u32(out, data_bytes);
  for (int16_t s : interleaved) put_u16(out, static_cast<uint16_t>(s));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path data_dir() { return CORPUSFORGE_TEST_DATA_DIR; }

void render_minicorpus(const std::filesystem::path& dir) {
  const auto spec = nlohmann::json::parse(read_text(data_dir() / "minicorpus" / "clips.json"));
  for (const auto& clip : spec["clips"]) {
    const int rate = clip.value("sample_rate", 16000);
    const int channels = clip.value("channels", 1);
    const int64_t ms = clip["duration_ms"].get<int64_t>();
    const auto mono = tone(ms, -20.0, 300.0, rate);
    std::vector<int16_t> interleaved;
    for (int16_t s : mono) {
      for (int c = 0; c < channels; ++c) interleaved.push_back(s);
    }
    write_pcm16(dir / (clip["id"].get<std::string>() + ".wav"), interleaved, rate, channels);
  }
}

}  // namespace fixtures

namespace fixtures {

std::string random_text(std::mt19937_64& rng, std::size_t max_pieces) {
  static const std::vector<std::string> kFragments = {
      "$",  "%",   "&",    "-",   "'",  ".",   ",",    "/",   "#",   "@",   "+",  "=",
      "st", "nd",  "rd",   "th",  "k",  "Dr",  "St",   "Mr.", "w2",  "401k", "ad&d", "covid-19",
      " ",  "  ",  "\t",   "\n",  "0",  "00",  "1,000", "19",  "2022", ".5",  "a.m.", "e.g.",
      "é",  "ß",   "Æ",    "ñ",   "ø",  "œ",   "€",    "£",   "½",   "²",   "–",  "\xe2\x80\x94",
      "“",  "”",   "’",    "…",   "中", "文",  "ж",    "λ",   "😀",  "🎉",  "\xcc\x81",
      "\xff", "\xc3", "\xe2\x82", "\x7f", "\x01"};
  std::uniform_int_distribution<std::size_t> n_pieces(0, max_pieces);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> letter('a', 'z');
  std::uniform_int_distribution<int> digit('0', '9');
  std::uniform_int_distribution<std::size_t> len(1, 6);
  std::uniform_int_distribution<std::size_t> frag(0, kFragments.size() - 1);
  std::uniform_int_distribution<char32_t> bmp(0xA0, 0xFFFD);

  std::string out;
  const std::size_t pieces = n_pieces(rng);
  for (std::size_t p = 0; p < pieces; ++p) {
    const int k = kind(rng);
    if (k <= 2) {
      for (std::size_t i = len(rng); i > 0; --i) {
        const char c = static_cast<char>(letter(rng));
        out += (k == 2) ? static_cast<char>(c - 'a' + 'A') : c;
      }
    } else if (k <= 4) {
      for (std::size_t i = len(rng); i > 0; --i) out += static_cast<char>(digit(rng));
    } else if (k <= 7) {
      out += kFragments[frag(rng)];
    } else if (k == 8) {
      char32_t cp = bmp(rng);
      if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0x263A;
      if (cp < 0x80) {
        out += static_cast<char>(cp);
      } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
      } else {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
      }
    } else {
      out += ' ';
    }
  }
  return out;
}

}  // namespace fixtures
