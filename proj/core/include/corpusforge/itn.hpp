#ifndef CORPUSFORGE_ITN_HPP_
#define CORPUSFORGE_ITN_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/textnorm.hpp"

namespace corpusforge {

// Spoken phrase -> written form, derived by inverting NormRules::special_terms.
struct ItnRule {
  std::vector<std::string> spoken;  // words
  std::string written;
};

struct ItnRules {
  // Longest spoken phrase first, dictionary order among equal lengths.
  std::vector<ItnRule> rules;

  // When two raw forms share a spoken form the earlier dictionary entry wins.
  static ItnRules from_norm_rules(const NormRules& norm);
};

// Rewrites spoken phrases to their written forms, greedy longest match left
// to right on word boundaries. Other words, and any punctuation attached to
// them, pass through unchanged. Runs of whitespace collapse to one space.
std::string inverse_normalize(std::string_view text, const ItnRules& rules);

}  // namespace corpusforge

#endif  // CORPUSFORGE_ITN_HPP_
