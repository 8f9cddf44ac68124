#include "corpusforge/textnorm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <stdexcept>

#include "corpusforge/error.hpp"
#include "corpusforge/io.hpp"
#include "corpusforge/stopwords.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge {
namespace {

// ---------------------------------------------------------------------------
// Character folding

// U+0100..U+017F folded to ASCII, as (count, replacement) runs.
constexpr std::array<std::pair<int, const char*>, 22> kLatinExtendedA = {{
    {6, "a"},  {8, "c"}, {4, "d"},  {10, "e"}, {8, "g"},  {4, "h"},  {10, "i"}, {2, "ij"},
    {2, "j"},  {3, "k"}, {10, "l"}, {9, "n"},  {6, "o"},  {2, "oe"}, {6, "r"},  {8, "s"},
    {6, "t"},  {12, "u"}, {2, "w"}, {3, "y"},  {6, "z"},  {1, "s"},
}};

const char* fold_latin1(char32_t cp) {
  // U+00C0..U+00FF; nullptr for the two arithmetic signs.
  static constexpr std::array<const char*, 64> kTable = {
      "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i",  "i",
      "d", "n", "o", "o", "o", "o", "o",  nullptr, "o", "u", "u", "u", "u", "y", "th", "ss",
      "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i",  "i",
      "d", "n", "o", "o", "o", "o", "o",  nullptr, "o", "u", "u", "u", "u", "y", "th", "y",
  };
  return kTable[cp - 0xC0];
}

const char* fold_latin_extended(char32_t cp) {
  int offset = static_cast<int>(cp - 0x100);
  for (const auto& [count, text] : kLatinExtendedA) {
    if (offset < count) return text;
    offset -= count;
  }
  return nullptr;
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f' ||
         cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000 || cp == 0x1680 || cp == 0x85;
}

bool is_invisible(char32_t cp) {
  return (cp >= 0x200B && cp <= 0x200D) || cp == 0xFEFF || cp == 0x2060 || cp == 0xAD;
}

// Lowercases ASCII, folds accented Latin letters to ASCII and maps the
// typographic variants of spaces, dashes and quotes to their ASCII forms.
std::u32string fold(std::u32string_view in) {
  std::u32string out;
  out.reserve(in.size());
  for (char32_t cp : in) {
    if (cp < 0x80) {
      out.push_back(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp);
    } else if (is_space(cp)) {
      out.push_back(' ');
    } else if (is_invisible(cp)) {
      continue;
    } else if (cp >= 0xC0 && cp <= 0xFF && fold_latin1(cp) != nullptr) {
      for (const char* p = fold_latin1(cp); *p; ++p) out.push_back(static_cast<char32_t>(*p));
    } else if (cp >= 0x100 && cp <= 0x17F) {
      for (const char* p = fold_latin_extended(cp); *p; ++p) out.push_back(static_cast<char32_t>(*p));
    } else if (cp >= 0x2010 && cp <= 0x2015) {
      out.push_back('-');
    } else if (cp == 0x2018 || cp == 0x2019 || cp == 0x201B || cp == 0x02BC || cp == 0x2032) {
      out.push_back('\'');
    } else if (cp == 0x201C || cp == 0x201D || cp == 0x201E || cp == 0x2033) {
      out.push_back('"');
    } else {
      out.push_back(cp);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Atoms

enum class AtomKind { kWord, kNumber, kSymbol, kPunct, kUnknown };
enum class NumberForm { kPlain, kCurrency, kPercent, kOrdinal, kDecade, kDigitGroups };

struct Atom {
  AtomKind kind = AtomKind::kWord;
  std::string text;
  bool glued = false;  // no whitespace before this atom
  NumberForm form = NumberForm::kPlain;
  bool spoken = false;  // already rewritten into the output alphabet
};

bool is_letter(char32_t c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_silent_punct(char32_t c) {
  if (c < 0x80) return c > ' ' && c != 0x7F && !is_letter(c) && !is_digit(c);
  return (c >= 0xA1 && c <= 0xBF) || c == 0xD7 || c == 0xF7 || (c >= 0x2016 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0xFF01 && c <= 0xFF0F);
}

bool is_symbol(char32_t c) {
  return c == '$' || c == '%' || c == '&' || c == '@' || c == '+' || c == '=' || c == '#';
}

class Scanner {
 public:
  explicit Scanner(std::u32string_view s) : s_(s) {}

  std::size_t digits(std::size_t i) const {
    std::size_t n = 0;
    while (i + n < s_.size() && is_digit(s_[i + n])) ++n;
    return n;
  }
  bool letter_at(std::size_t i) const { return i < s_.size() && is_letter(s_[i]); }
  bool digit_at(std::size_t i) const { return i < s_.size() && is_digit(s_[i]); }
  bool at(std::size_t i, char32_t c) const { return i < s_.size() && s_[i] == c; }

  // digits with optional ",ddd" grouping and optional ".d+" fraction.
  std::size_t number_body(std::size_t i) const {
    const std::size_t lead = digits(i);
    if (lead == 0) return 0;
    std::size_t n = lead;
    if (lead <= 3) {
      while (at(i + n, ',') && digits(i + n + 1) == 3) n += 4;
    }
    if (at(i + n, '.') && digit_at(i + n + 1)) n += 1 + digits(i + n + 1);
    return n;
  }

  std::size_t currency(std::size_t i) const {
    if (!at(i, '$')) return 0;
    const std::size_t body = number_body(i + 1);
    if (body == 0) return 0;
    std::size_t n = 1 + body;
    if ((at(i + n, 'k') || at(i + n, 'm') || at(i + n, 'b')) && !letter_at(i + n + 1)) ++n;
    return n;
  }

  std::size_t percent(std::size_t i) const {
    const std::size_t body = number_body(i);
    return body > 0 && at(i + body, '%') ? body + 1 : 0;
  }

  std::size_t ordinal(std::size_t i) const {
    const std::size_t d = digits(i);
    if (d == 0 || !letter_at(i + d) || !letter_at(i + d + 1) || letter_at(i + d + 2)) return 0;
    const std::u32string_view suffix = s_.substr(i + d, 2);
    if (suffix == U"st" || suffix == U"nd" || suffix == U"rd" || suffix == U"th") return d + 2;
    return 0;
  }

  std::size_t decade(std::size_t i) const {
    const std::size_t d = digits(i);
    if (d != 2 && d != 4) return 0;
    if (at(i + d, 's') && !letter_at(i + d + 1)) return d + 1;
    if (at(i + d, '\'') && at(i + d + 1, 's') && !letter_at(i + d + 2)) return d + 2;
    return 0;
  }

  std::size_t digit_groups(std::size_t i) const {
    std::size_t n = digits(i);
    if (n == 0) return 0;
    int groups = 1;
    while (at(i + n, '-') && digit_at(i + n + 1)) {
      n += 1 + digits(i + n + 1);
      ++groups;
    }
    return groups >= 2 ? n : 0;
  }

 private:
  std::u32string_view s_;
};

std::string ascii(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) out.push_back(static_cast<char>(c));
  return out;
}

// Splits folded text into atoms: letter runs, number expressions, single
// symbols and punctuation marks.
std::vector<Atom> atomize(std::u32string_view text) {
  std::vector<Atom> atoms;
  const Scanner scan(text);
  bool glued = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (c == ' ') {
      glued = false;
      ++i;
      continue;
    }
    Atom atom;
    atom.glued = glued;
    std::size_t len = 1;
    if (is_letter(c)) {
      len = 0;
      while (i + len < text.size()) {
        const char32_t d = text[i + len];
        if (is_letter(d) || (d == '\'' && len > 0 && scan.letter_at(i + len + 1))) {
          ++len;
        } else {
          break;
        }
      }
      atom.kind = AtomKind::kWord;
      atom.text = ascii(text.substr(i, len));
    } else if (c == '$' || is_digit(c)) {
      const std::array<std::pair<std::size_t, NumberForm>, 6> candidates = {{
          {scan.currency(i), NumberForm::kCurrency},
          {scan.percent(i), NumberForm::kPercent},
          {scan.ordinal(i), NumberForm::kOrdinal},
          {scan.decade(i), NumberForm::kDecade},
          {scan.digit_groups(i), NumberForm::kDigitGroups},
          {scan.number_body(i), NumberForm::kPlain},
      }};
      std::size_t best = 0;
      NumberForm form = NumberForm::kPlain;
      for (const auto& [n, f] : candidates) {
        if (n > best) best = n, form = f;
      }
      if (best == 0) {
        atom.kind = AtomKind::kSymbol;
        atom.text = "$";
      } else {
        len = best;
        atom.kind = AtomKind::kNumber;
        atom.form = form;
        atom.text = ascii(text.substr(i, len));
      }
    } else if (is_symbol(c)) {
      atom.kind = AtomKind::kSymbol;
      atom.text = static_cast<char>(c);
    } else {
      atom.kind = is_silent_punct(c) ? AtomKind::kPunct : AtomKind::kUnknown;
      utf8::append(atom.text, c);
    }
    atoms.push_back(std::move(atom));
    glued = true;
    i += len;
  }
  return atoms;
}

bool is_inventory(std::string_view s, bool allow_apostrophe) {
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || c == ' ' || (allow_apostrophe && c == '\''))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Number readings

struct ParsedNumber {
  std::string integer;   // digits only, commas removed
  std::string fraction;  // digits after '.', may be empty
  bool grouped = false;  // had thousands separators
};

ParsedNumber parse_body(std::string_view body) {
  ParsedNumber n;
  std::size_t i = 0;
  for (; i < body.size() && body[i] != '.'; ++i) {
    if (body[i] == ',') {
      n.grouped = true;
    } else {
      n.integer.push_back(body[i]);
    }
  }
  if (i < body.size()) n.fraction = std::string(body.substr(i + 1));
  return n;
}

std::optional<uint64_t> to_value(std::string_view digits) {
  if (digits.empty() || digits.size() > 15) return std::nullopt;
  uint64_t v = 0;
  for (char c : digits) v = v * 10 + static_cast<uint64_t>(c - '0');
  return v;
}

std::string join(std::string a, std::string_view b) {
  if (b.empty()) return a;
  if (a.empty()) return std::string(b);
  a += ' ';
  a += b;
  return a;
}

// Quantity reading: cardinal where it fits, digits otherwise.
std::string quantity_words(std::string_view digits) {
  if (auto v = to_value(digits)) return cardinal_words(*v);
  return expand_digits(digits);
}

std::string with_fraction(std::string integer_words, std::string_view fraction) {
  if (fraction.empty()) return integer_words;
  return join(join(std::move(integer_words), "point"), expand_digits(fraction));
}

}  // namespace

// ---------------------------------------------------------------------------
// Normalizer

struct Normalizer::Pattern {
  std::vector<Atom> atoms;
  std::size_t index = 0;  // into special_terms or abbreviation keys
};

struct Normalizer::Compiled {
  std::vector<Pattern> special;
  std::vector<Pattern> abbreviations;
  std::vector<const Abbreviation*> abbreviation_entries;
};

namespace {

std::vector<Atom> atomize_key(std::string_view key) {
  return atomize(fold(utf8::decode(key)));
}

}  // namespace

Normalizer::Normalizer(NormRules rules) : rules_(std::move(rules)) {
  rules_.validate();
  auto compiled = std::make_shared<Compiled>();
  for (std::size_t i = 0; i < rules_.special_terms.size(); ++i) {
    compiled->special.push_back({atomize_key(rules_.special_terms[i].first), i});
  }
  std::size_t index = 0;
  for (const auto& [key, entry] : rules_.abbreviations) {
    compiled->abbreviations.push_back({atomize_key(key), index++});
    compiled->abbreviation_entries.push_back(&entry);
  }
  // Longest pattern first; dictionary order among equals.
  auto by_length = [](const Pattern& a, const Pattern& b) {
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() > b.atoms.size();
    return a.index < b.index;
  };
  std::stable_sort(compiled->special.begin(), compiled->special.end(), by_length);
  std::stable_sort(compiled->abbreviations.begin(), compiled->abbreviations.end(), by_length);
  compiled_ = std::move(compiled);
}

namespace {

bool matches(const std::vector<Atom>& atoms, std::size_t at, const std::vector<Atom>& pattern) {
  if (pattern.empty() || at + pattern.size() > atoms.size()) return false;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const Atom& a = atoms[at + k];
    if (a.spoken || a.text != pattern[k].text) return false;
    if (k > 0 && a.glued != pattern[k].glued) return false;
  }
  return true;
}

Atom spoken_atom(std::string text, bool glued) {
  Atom a;
  a.kind = AtomKind::kWord;
  a.text = std::move(text);
  a.glued = glued;
  a.spoken = true;
  return a;
}

bool is_content(const Atom& a) { return a.kind != AtomKind::kPunct; }

const std::set<std::string>& street_context_words() {
  static const std::set<std::string> words = {"apt", "apartment", "suite", "ste", "unit",
                                              "bldg", "building", "#", "floor", "fl"};
  return words;
}

}  // namespace

NormalizedText Normalizer::operator()(std::string_view raw, std::vector<NormWarning>* warnings) const {
  std::string current = pass(raw, warnings);
  // A second pass can only fire on spoken forms re-exposed by punctuation
  // removal; iterate to a fixed point so normalize is idempotent.
  for (int round = 0; round < 4; ++round) {
    std::string next = pass(current, nullptr);
    if (next == current) break;
    current = std::move(next);
  }
  return {std::move(current)};
}

std::string Normalizer::pass(std::string_view raw, std::vector<NormWarning>* warnings) const {
  auto warn = [&](std::string kind, std::string token, std::string detail) {
    if (warnings) warnings->push_back({std::move(kind), std::move(token), std::move(detail)});
  };

  std::vector<Atom> atoms = atomize(fold(utf8::decode(raw)));

  // Special terms.
  {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size();) {
      const Pattern* hit = nullptr;
      for (const auto& p : compiled_->special) {
        if (matches(atoms, i, p.atoms)) {
          hit = &p;
          break;
        }
      }
      if (!hit) {
        out.push_back(std::move(atoms[i++]));
        continue;
      }
      out.push_back(spoken_atom(rules_.special_terms[hit->index].second, atoms[i].glued));
      i += hit->atoms.size();
    }
    atoms = std::move(out);
  }

  // Abbreviations.
  {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size();) {
      const Pattern* hit = nullptr;
      for (const auto& p : compiled_->abbreviations) {
        if (matches(atoms, i, p.atoms)) {
          hit = &p;
          break;
        }
      }
      if (!hit) {
        out.push_back(std::move(atoms[i++]));
        continue;
      }
      const Abbreviation& entry = *compiled_->abbreviation_entries[hit->index];
      const std::size_t end = i + hit->atoms.size();
      std::string reading = entry.plain;
      if (entry.contextual()) {
        std::vector<const Atom*> before;
        // Earlier atoms have already been moved into `out`.
        for (std::size_t j = out.size(); j-- > 0 && before.size() < 3;) {
          if (is_content(out[j])) before.push_back(&out[j]);
        }
        const Atom* after = nullptr;
        for (std::size_t j = end; j < atoms.size(); ++j) {
          if (is_content(atoms[j])) {
            after = &atoms[j];
            break;
          }
        }
        const bool house_number = std::any_of(before.begin(), before.end(), [](const Atom* a) {
          return a->kind == AtomKind::kNumber;
        });
        const bool street_after =
            after && (street_context_words().contains(after->text) ||
                      (after->kind == AtomKind::kNumber && after->text.size() == 5));
        const bool name_before = !before.empty() && before[0]->kind == AtomKind::kWord &&
                                 !before[0]->spoken && !rules_.common_words.contains(before[0]->text);
        const bool name_after = after && after->kind == AtomKind::kWord &&
                                !rules_.common_words.contains(after->text);
        if (house_number || street_after || name_before) {
          reading = entry.street;
        } else {
          reading = entry.title;
          if (!name_after) {
            warn("ambiguous_abbreviation", atoms[i].text, "resolved to \"" + entry.title + "\"");
          }
        }
      }
      out.push_back(spoken_atom(reading, atoms[i].glued));
      i = end;
    }
    atoms = std::move(out);
  }

  // Numbers and pronounced symbols.
  std::vector<std::string> words;
  const YearRange years = rules_.year_range;
  auto in_years = [&](std::string_view digits) {
    if (digits.size() != 4 || digits[0] == '0') return false;
    const int v = std::stoi(std::string(digits));
    return v >= years.low && v <= years.high;
  };
  // Integer reading by shape: short numbers as cardinals, four-digit years,
  // everything else digit by digit.
  auto integer_words = [&](std::string_view digits) -> std::string {
    if (digits.size() <= 3) {
      if (digits.size() > 1 && digits[0] == '0') return expand_digits(digits);
      return cardinal_words(*to_value(digits));
    }
    if (in_years(digits)) return expand_year(std::stoi(std::string(digits)), years);
    return expand_digits(digits);
  };
  auto plain_words = [&](std::string_view body) -> std::string {
    const ParsedNumber n = parse_body(body);
    if (n.grouped) return with_fraction(quantity_words(n.integer), n.fraction);
    if (!n.fraction.empty()) {
      const bool leading_zero = n.integer.size() > 1 && n.integer[0] == '0';
      return with_fraction(leading_zero ? expand_digits(n.integer) : quantity_words(n.integer),
                           n.fraction);
    }
    return integer_words(n.integer);
  };
  auto is_scale = [](std::string_view w) {
    return w == "thousand" || w == "million" || w == "billion" || w == "trillion";
  };
  auto currency_words = [&](std::string_view body, std::string_view scale) -> std::string {
    const ParsedNumber n = parse_body(body);
    const auto dollars = to_value(n.integer);
    if (!dollars) return join(expand_digits(n.integer), "dollars");
    if (!scale.empty()) {
      return join(join(with_fraction(cardinal_words(*dollars), n.fraction), scale), "dollars");
    }
    if (n.fraction.size() > 2) {
      return join(with_fraction(cardinal_words(*dollars), n.fraction), "dollars");
    }
    int cents = 0;
    if (!n.fraction.empty()) {
      cents = std::stoi(n.fraction) * (n.fraction.size() == 1 ? 10 : 1);
    }
    if (*dollars == 0 && cents > 0) {
      return join(cardinal_words(static_cast<uint64_t>(cents)), cents == 1 ? "cent" : "cents");
    }
    return expand_currency(static_cast<int64_t>(*dollars), cents);
  };

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Atom& a = atoms[i];
    if (a.spoken) {
      words.push_back(a.text);
      continue;
    }
    switch (a.kind) {
      case AtomKind::kWord: {
        std::string w = a.text;
        if (!rules_.keep_apostrophe) std::erase(w, '\'');
        if (!w.empty()) words.push_back(std::move(w));
        break;
      }
      case AtomKind::kNumber: {
        std::string_view t = a.text;
        switch (a.form) {
          case NumberForm::kCurrency: {
            std::string_view body = t.substr(1);
            std::string scale;
            if (!body.empty() && (body.back() == 'k' || body.back() == 'm' || body.back() == 'b')) {
              scale = body.back() == 'k' ? "thousand" : body.back() == 'm' ? "million" : "billion";
              body.remove_suffix(1);
            } else if (i + 1 < atoms.size() && atoms[i + 1].kind == AtomKind::kWord &&
                       !atoms[i + 1].spoken && is_scale(atoms[i + 1].text) &&
                       parse_body(body).fraction.size() != 2) {
              scale = atoms[++i].text;
            }
            words.push_back(currency_words(body, scale));
            break;
          }
          case NumberForm::kPercent: {
            const ParsedNumber n = parse_body(t.substr(0, t.size() - 1));
            const bool leading_zero = n.integer.size() > 1 && n.integer[0] == '0';
            words.push_back(join(
                with_fraction(leading_zero ? expand_digits(n.integer) : quantity_words(n.integer),
                              n.fraction),
                "percent"));
            break;
          }
          case NumberForm::kOrdinal: {
            const std::string_view digits = t.substr(0, t.size() - 2);
            const auto value = to_value(digits);
            if (!value) {
              words.push_back(expand_digits(digits));
              break;
            }
            const std::string_view suffix = t.substr(t.size() - 2);
            if (suffix != ordinal_suffix(*value)) {
              warn("ordinal_suffix", a.text,
                   "expected suffix \"" + std::string(ordinal_suffix(*value)) + "\"");
            }
            words.push_back(ordinal_words(*value));
            break;
          }
          case NumberForm::kDecade: {
            const std::string_view digits = t.substr(0, t.find_first_not_of("0123456789"));
            words.push_back(pluralize_last_word(integer_words(digits)));
            break;
          }
          case NumberForm::kDigitGroups: {
            std::vector<std::string_view> groups;
            std::size_t total = 0;
            for (std::size_t p = 0; p <= t.size();) {
              const std::size_t q = std::min(t.find('-', p), t.size());
              groups.push_back(t.substr(p, q - p));
              total += q - p;
              p = q + 1;
            }
            // Phone and social security numbers are read digit by digit.
            const bool identifier = total >= 7;
            std::string reading;
            for (auto g : groups) {
              reading = join(std::move(reading), identifier ? expand_digits(g) : integer_words(g));
            }
            words.push_back(std::move(reading));
            break;
          }
          case NumberForm::kPlain: {
            const bool after_dollar = i > 0 && atoms[i - 1].kind == AtomKind::kSymbol &&
                                      atoms[i - 1].text == "$" && !atoms[i - 1].spoken;
            words.push_back(after_dollar ? currency_words(t, "") : plain_words(t));
            break;
          }
        }
        break;
      }
      case AtomKind::kSymbol: {
        const char s = a.text[0];
        const bool number_follows = i + 1 < atoms.size() && atoms[i + 1].kind == AtomKind::kNumber;
        if (s == '&') words.emplace_back("and");
        else if (s == '@') words.emplace_back("at");
        else if (s == '+') words.emplace_back("plus");
        else if (s == '=') words.emplace_back("equals");
        else if (s == '%') words.emplace_back("percent");
        else if (s == '#' && number_follows) words.emplace_back("number");
        // A bare '$' is read with the amount that follows it.
        break;
      }
      case AtomKind::kPunct:
        break;
      case AtomKind::kUnknown:
        warn(a.text == utf8::encode(std::u32string(1, utf8::kReplacement)) ? "invalid_utf8"
                                                                           : "unknown_glyph",
             a.text, "dropped");
        break;
    }
  }

  std::string out;
  for (const auto& w : words) {
    if (w.empty()) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rules

NormRules NormRules::defaults() {
  NormRules r;
  r.special_terms = {
      {"401k", "four o one k"},       {"403b", "four o three b"},
      {"457b", "four five seven b"},  {"ad&d", "a d n d"},
      {"w2", "w two"},                {"w4", "w four"},
      {"i9", "i nine"},               {"1099", "ten ninety nine"},
      {"1095-c", "ten ninety five c"}, {"covid-19", "covid nineteen"},
      {"24/7", "twenty four seven"},  {"hsa", "h s a"},
      {"fsa", "f s a"},               {"hra", "h r a"},
      {"ppo", "p p o"},               {"hmo", "h m o"},
      {"epo", "e p o"},               {"pto", "p t o"},
      {"ssn", "s s n"},               {"std", "s t d"},
      {"ltd", "l t d"},               {"eap", "e a p"},
  };
  r.abbreviations = {
      {"dr", {"", "drive", "doctor"}},
      {"st", {"", "street", "saint"}},
      {"ave", {"avenue", "", ""}},
      {"blvd", {"boulevard", "", ""}},
      {"rd", {"road", "", ""}},
      {"ln", {"lane", "", ""}},
      {"hwy", {"highway", "", ""}},
      {"pkwy", {"parkway", "", ""}},
      {"apt", {"apartment", "", ""}},
      {"ste", {"suite", "", ""}},
      {"mr", {"mister", "", ""}},
      {"mrs", {"missus", "", ""}},
      {"jr", {"junior", "", ""}},
      {"sr", {"senior", "", ""}},
      {"dept", {"department", "", ""}},
      {"approx", {"approximately", "", ""}},
      {"etc", {"et cetera", "", ""}},
      {"vs", {"versus", "", ""}},
      {"a.m", {"a m", "", ""}},
      {"p.m", {"p m", "", ""}},
      {"e.g", {"for example", "", ""}},
      {"i.e", {"that is", "", ""}},
  };
  r.common_words = default_common_words();
  return r;
}

void NormRules::validate() const {
  for (std::size_t i = 0; i < special_terms.size(); ++i) {
    const auto& [key, value] = special_terms[i];
    const std::string field = "special_terms." + key;
    if (key.empty()) throw ConfigError("special_terms", "empty key");
    if (value.empty() || !is_normalized(value, keep_apostrophe)) {
      throw ConfigError(field, "spoken form must be non-empty lowercase letters and single spaces");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (special_terms[j].first == key) throw ConfigError(field, "duplicate key");
    }
  }
  for (const auto& [key, entry] : abbreviations) {
    const std::string field = "abbreviations." + key;
    if (key.empty()) throw ConfigError("abbreviations", "empty key");
    if (entry.plain.empty() && !entry.contextual()) {
      throw ConfigError(field, "needs either a plain reading or both street and title");
    }
    for (const auto* reading : {&entry.plain, &entry.street, &entry.title}) {
      if (!reading->empty() && !is_normalized(*reading, keep_apostrophe)) {
        throw ConfigError(field, "reading must be lowercase letters and single spaces");
      }
    }
  }
  if (!(year_range.low < year_range.high)) {
    throw ConfigError("year_range", "low must be below high");
  }
  if (year_range.low < 1000 || year_range.high > 9999) {
    throw ConfigError("year_range", "bounds must be four-digit years");
  }
}

namespace {

Abbreviation parse_abbreviation(const nlohmann::ordered_json& v, const std::string& field) {
  Abbreviation a;
  if (v.is_string()) {
    a.plain = v.get<std::string>();
    return a;
  }
  if (!v.is_object()) throw ConfigError(field, "expected a string or an object");
  for (const auto& [k, item] : v.items()) {
    if (!item.is_string()) throw ConfigError(field + "." + k, "expected a string");
    if (k == "plain") a.plain = item.get<std::string>();
    else if (k == "street") a.street = item.get<std::string>();
    else if (k == "title") a.title = item.get<std::string>();
    else throw ConfigError(field + "." + k, "unknown field");
  }
  return a;
}

}  // namespace

NormRules NormRules::from_json(const nlohmann::json& plain_config) {
  // Re-parse with insertion order preserved for the special-term priority.
  const auto config = nlohmann::ordered_json::parse(plain_config.dump());
  return from_ordered_json(config);
}

NormRules NormRules::from_ordered_json(const nlohmann::ordered_json& config) {
  if (!config.is_object()) throw ConfigError("rules", "expected a JSON object");
  const bool replace = config.contains("replace_defaults") && config["replace_defaults"].is_boolean() &&
                       config["replace_defaults"].get<bool>();
  NormRules r = replace ? NormRules{} : defaults();

  for (const auto& [key, value] : config.items()) {
    if (key == "replace_defaults") {
      if (!value.is_boolean()) throw ConfigError(key, "expected a boolean");
    } else if (key == "special_terms") {
      auto upsert = [&](const std::string& raw, const nlohmann::ordered_json& spoken) {
        if (!spoken.is_string()) throw ConfigError("special_terms." + raw, "expected a string");
        std::string lowered = raw;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        auto it = std::find_if(r.special_terms.begin(), r.special_terms.end(),
                               [&](const auto& p) { return p.first == lowered; });
        if (it != r.special_terms.end()) {
          it->second = spoken.get<std::string>();
        } else {
          r.special_terms.emplace_back(lowered, spoken.get<std::string>());
        }
      };
      if (value.is_object()) {
        for (const auto& [raw, spoken] : value.items()) upsert(raw, spoken);
      } else if (value.is_array()) {
        for (const auto& pair : value) {
          if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) {
            throw ConfigError(key, "expected [raw, spoken] pairs");
          }
          upsert(pair[0].get<std::string>(), pair[1]);
        }
      } else {
        throw ConfigError(key, "expected an object or an array of pairs");
      }
    } else if (key == "abbreviations") {
      if (!value.is_object()) throw ConfigError(key, "expected an object");
      for (const auto& [abbr, entry] : value.items()) {
        r.abbreviations[abbr] = parse_abbreviation(entry, "abbreviations." + abbr);
      }
    } else if (key == "year_range") {
      if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
          !value[1].is_number_integer()) {
        throw ConfigError(key, "expected [low, high] integers");
      }
      r.year_range = {value[0].get<int>(), value[1].get<int>()};
    } else if (key == "keep_apostrophe") {
      if (!value.is_boolean()) throw ConfigError(key, "expected a boolean");
      r.keep_apostrophe = value.get<bool>();
    } else if (key == "common_words") {
      if (!value.is_array()) throw ConfigError(key, "expected an array of strings");
      for (const auto& w : value) {
        if (!w.is_string()) throw ConfigError(key, "expected an array of strings");
        r.common_words.insert(w.get<std::string>());
      }
    } else {
      throw ConfigError(key, "unknown field");
    }
  }
  r.validate();
  return r;
}

NormRules NormRules::load(const std::filesystem::path& path) {
  nlohmann::ordered_json config;
  try {
    config = nlohmann::ordered_json::parse(read_file_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("rules", path.string() + ": " + e.what());
  }
  return from_ordered_json(config);
}

bool is_normalized(std::string_view text, bool allow_apostrophe) {
  if (text.empty()) return true;
  if (text.front() == ' ' || text.back() == ' ') return false;
  if (text.find("  ") != std::string_view::npos) return false;
  return is_inventory(text, allow_apostrophe);
}

nlohmann::json NormWarning::to_json() const {
  return {{"kind", kind}, {"token", token}, {"detail", detail}};
}

NormalizedText normalize(std::string_view raw, const NormRules& rules,
                         std::vector<NormWarning>* warnings) {
  return Normalizer(rules)(raw, warnings);
}

}  // namespace corpusforge
