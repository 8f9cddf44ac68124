#include "corpusforge/manifest.hpp"

#include <fstream>

#include "corpusforge/error.hpp"
#include "corpusforge/metrics.hpp"

namespace corpusforge {

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<nlohmann::json> out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

nlohmann::ordered_json utterance_to_json(const Utterance& utt) {
  nlohmann::ordered_json j;
  j["id"] = utt.clip_id;
  j["audio"] = utt.audio;
  j["text"] = utt.transcript.text;
  j["duration_ms"] = utt.duration_ms;
  j["winner"] = utt.winner;
  j["er"] = utt.winner_er;
  j["avg_wer"] = utt.winner_avg_wer;
  j["avg_cer"] = utt.winner_avg_cer;
  j["source"] = utt.source;
  return j;
}

namespace {

template <typename T>
T optional_field(const nlohmann::json& obj, const char* key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

Utterance utterance_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw DataError("manifest line is not a JSON object");
  const auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) throw DataError("manifest line has no string \"id\"");
  const auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) {
    throw DataError("manifest line " + id->get<std::string>() + " has no string \"text\"");
  }
  Utterance u;
  u.clip_id = id->get<std::string>();
  u.transcript.text = text->get<std::string>();
  u.audio = optional_field<std::string>(obj, "audio", "");
  u.source = optional_field<std::string>(obj, "source", "");
  u.duration_ms = optional_field<int64_t>(obj, "duration_ms", 0);
  u.winner = optional_field<std::string>(obj, "winner", "");
  u.winner_er = optional_field<double>(obj, "er", 0.0);
  u.winner_avg_wer = optional_field<double>(obj, "avg_wer", 0.0);
  u.winner_avg_cer = optional_field<double>(obj, "avg_cer", 0.0);
  u.char_len = static_cast<int64_t>(char_tokens(u.transcript.text).size());
  u.word_len = static_cast<int64_t>(word_tokens(u.transcript.text).size());
  return u;
}

std::string render_manifest(std::span<const Utterance> utts) {
  std::string out;
  for (const auto& u : utts) {
    out += utterance_to_json(u).dump();
    out += '\n';
  }
  return out;
}

std::vector<Utterance> read_manifest(const std::filesystem::path& path) {
  const auto lines = read_jsonl(path);
  std::vector<Utterance> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(utterance_from_json(lines[i]));
    } catch (const DataError& e) {
      throw DataError(path.string() + ": record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

nlohmann::ordered_json Rejection::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = clip_id;
  j["stage"] = stage;
  j["reason"] = reason;
  if (utterance) {
    j["text"] = utterance->transcript.text;
    j["winner"] = utterance->winner;
    j["er"] = utterance->winner_er;
    j["avg_wer"] = utterance->winner_avg_wer;
    j["avg_cer"] = utterance->winner_avg_cer;
    j["duration_ms"] = utterance->duration_ms;
  }
  return j;
}

std::string render_rejections(std::span<const Rejection> rejections) {
  std::string out;
  for (const auto& r : rejections) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

}  // namespace corpusforge
