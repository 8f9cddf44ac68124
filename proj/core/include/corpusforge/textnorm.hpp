#ifndef CORPUSFORGE_TEXTNORM_HPP_
#define CORPUSFORGE_TEXTNORM_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpusforge/number_words.hpp"

namespace corpusforge {

// Readings for an abbreviation. `street` and `title` are chosen from
// context ("Main Dr" vs "Dr Smith"); `plain` applies when neither is set.
struct Abbreviation {
  std::string plain;
  std::string street;
  std::string title;

  bool contextual() const { return !street.empty() && !title.empty(); }
};

struct NormRules {
  // Raw written form -> spoken form, in priority order. Keys may contain
  // digits and symbols ("401k", "ad&d", "covid-19").
  std::vector<std::pair<std::string, std::string>> special_terms;
  std::map<std::string, Abbreviation> abbreviations;
  YearRange year_range;
  bool keep_apostrophe = true;
  // Words that never count as a street name in front of a contextual
  // abbreviation.
  std::set<std::string> common_words;

  // The shipped seed dictionary.
  static NormRules defaults();

  // Overlays `config` on the defaults (or on an empty rule set when
  // config["replace_defaults"] is true). Throws ConfigError.
  static NormRules from_json(const nlohmann::json& config);
  static NormRules from_ordered_json(const nlohmann::ordered_json& config);
  static NormRules load(const std::filesystem::path& path);

  // Throws ConfigError when an invariant does not hold.
  void validate() const;
};

// Text over {a-z, space, apostrophe}, single-spaced and trimmed.
struct NormalizedText {
  std::string text;

  bool empty() const { return text.empty(); }
  friend bool operator==(const NormalizedText&, const NormalizedText&) = default;
};

bool is_normalized(std::string_view text, bool allow_apostrophe = true);

struct NormWarning {
  std::string kind;   // "unknown_glyph", "ordinal_suffix", "ambiguous_abbreviation", ...
  std::string token;  // offending input fragment (UTF-8)
  std::string detail;

  nlohmann::json to_json() const;
};

// Compiled rule set; construct once and reuse across calls and threads.
class Normalizer {
 public:
  explicit Normalizer(NormRules rules = NormRules::defaults());

  NormalizedText operator()(std::string_view raw,
                            std::vector<NormWarning>* warnings = nullptr) const;

  const NormRules& rules() const { return rules_; }

  struct Pattern;
  struct Compiled;

 private:
  std::string pass(std::string_view raw, std::vector<NormWarning>* warnings) const;

  NormRules rules_;
  std::shared_ptr<const Compiled> compiled_;
};

// Converts written-domain text to the spoken-domain alphabet. Rule order:
// lowercase, special terms, abbreviations, currency, percent, ordinal, year,
// cardinal/digit string, hyphen to space, residual punctuation,
// whitespace collapse. Total: unknown glyphs are dropped and reported in
// `warnings` when it is non-null.
NormalizedText normalize(std::string_view raw, const NormRules& rules,
                         std::vector<NormWarning>* warnings = nullptr);

}  // namespace corpusforge

#endif  // CORPUSFORGE_TEXTNORM_HPP_
