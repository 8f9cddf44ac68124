#include "corpusforge/itn.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace corpusforge {
namespace {

struct Token {
  std::string_view raw;
  std::string_view lead;   // punctuation before the word
  std::string bare;        // lowercased word
  std::string_view trail;  // punctuation after the word
};

bool is_edge_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

Token split_token(std::string_view raw) {
  Token t{raw, {}, {}, {}};
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && is_edge_punct(raw[b])) ++b;
  while (e > b && is_edge_punct(raw[e - 1])) --e;
  t.lead = raw.substr(0, b);
  t.trail = raw.substr(e);
  t.bare.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    t.bare.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i]))));
  }
  return t;
}

std::vector<std::string> words_of(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

bool matches_at(const std::vector<Token>& tokens, std::size_t at, const ItnRule& rule) {
  const std::size_t n = rule.spoken.size();
  if (n == 0 || at + n > tokens.size()) return false;
  for (std::size_t k = 0; k < n; ++k) {
    const Token& t = tokens[at + k];
    if (t.bare != rule.spoken[k]) return false;
    // Punctuation may only sit on the outside of the phrase.
    if (k > 0 && !t.lead.empty()) return false;
    if (k + 1 < n && !t.trail.empty()) return false;
  }
  return true;
}

}  // namespace

ItnRules ItnRules::from_norm_rules(const NormRules& norm) {
  ItnRules out;
  std::set<std::string> seen;
  for (const auto& [raw, spoken] : norm.special_terms) {
    if (!seen.insert(spoken).second) continue;
    out.rules.push_back({words_of(spoken), raw});
  }
  std::stable_sort(out.rules.begin(), out.rules.end(), [](const ItnRule& a, const ItnRule& b) {
    return a.spoken.size() > b.spoken.size();
  });
  return out;
}

std::string inverse_normalize(std::string_view text, const ItnRules& rules) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(split_token(text.substr(i, j - i)));
    i = j;
  }

  std::string out;
  auto emit = [&out](std::string_view piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  for (std::size_t t = 0; t < tokens.size();) {
    const ItnRule* hit = nullptr;
    for (const auto& rule : rules.rules) {
      if (matches_at(tokens, t, rule)) {
        hit = &rule;
        break;
      }
    }
    if (!hit) {
      emit(tokens[t++].raw);
      continue;
    }
    std::string piece(tokens[t].lead);
    piece += hit->written;
    piece += tokens[t + hit->spoken.size() - 1].trail;
    emit(piece);
    t += hit->spoken.size();
  }
  return out;
}

}  // namespace corpusforge
