#ifndef CORPUSFORGE_MANIFEST_HPP_
#define CORPUSFORGE_MANIFEST_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpusforge/committee.hpp"

namespace corpusforge {

// Parses a JSON-lines file. Blank lines are skipped; a malformed line throws
// DataError naming the file and line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

// One manifest line, fields in the order
// id, audio, text, duration_ms, winner, er, avg_wer, avg_cer, source.
nlohmann::ordered_json utterance_to_json(const Utterance& utt);

// Inverse of utterance_to_json. Only "id" and "text" are required, so plain
// reference transcripts ({"id","text"}) can be read as well. char_len and
// word_len are recomputed from the text. Throws DataError.
Utterance utterance_from_json(const nlohmann::json& obj);

// Newline-terminated JSON lines.
std::string render_manifest(std::span<const Utterance> utts);

std::vector<Utterance> read_manifest(const std::filesystem::path& path);

// An input that did not make it into the manifest.
struct Rejection {
  std::string clip_id;
  // "decode", "duration", "transcribe", "committee", "f1", "f2" or "f3".
  std::string stage;
  std::string reason;
  // Set for rejections after transcript selection.
  std::optional<Utterance> utterance;

  nlohmann::ordered_json to_json() const;
};

std::string render_rejections(std::span<const Rejection> rejections);

}  // namespace corpusforge

#endif  // CORPUSFORGE_MANIFEST_HPP_
