#include "corpusforge/number_words.hpp"

#include <array>
#include <stdexcept>

namespace corpusforge {
namespace {

constexpr std::array<std::string_view, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};

constexpr std::array<std::string_view, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};

constexpr std::array<std::string_view, 5> kScales = {"", "thousand", "million", "billion",
                                                     "trillion"};

void append(std::string& out, std::string_view word) {
  if (!out.empty()) out += ' ';
  out += word;
}

// 1..999
void append_group(std::string& out, unsigned n) {
  if (n >= 100) {
    append(out, kOnes[n / 100]);
    append(out, "hundred");
    n %= 100;
  }
  if (n >= 20) {
    append(out, kTens[n / 10]);
    n %= 10;
    if (n) append(out, kOnes[n]);
  } else if (n > 0) {
    append(out, kOnes[n]);
  }
}

}  // namespace

std::string cardinal_words(uint64_t n) {
  if (n == 0) return "zero";
  if (n >= 1'000'000'000'000'000ULL) throw std::out_of_range("cardinal_words: value too large");
  std::array<unsigned, kScales.size()> groups{};
  for (auto& g : groups) {
    g = static_cast<unsigned>(n % 1000);
    n /= 1000;
  }
  std::string out;
  for (std::size_t i = groups.size(); i-- > 0;) {
    if (groups[i] == 0) continue;
    append_group(out, groups[i]);
    if (i > 0) append(out, kScales[i]);
  }
  return out;
}

std::string expand_cardinal(int64_t n) {
  if (n < 0 || n > 999'999) throw std::out_of_range("expand_cardinal: expected 0..999999");
  return cardinal_words(static_cast<uint64_t>(n));
}

std::string expand_digits(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("expand_digits: empty input");
  std::string out;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("expand_digits: non-digit input");
    append(out, kOnes[static_cast<std::size_t>(c - '0')]);
  }
  return out;
}

std::string expand_year(int n, YearRange range) {
  if (n < range.low || n > range.high) throw std::out_of_range("expand_year: outside year range");
  if (n < 1000 || n > 9999) throw std::out_of_range("expand_year: not a four-digit year");
  const int century = n / 100;
  const int rest = n % 100;
  if (century == 20) {
    return rest == 0 ? "two thousand" : "two thousand " + cardinal_words(static_cast<unsigned>(rest));
  }
  std::string out = cardinal_words(static_cast<unsigned>(century));
  if (rest == 0) {
    append(out, "hundred");
  } else if (rest < 10) {
    append(out, "oh");
    append(out, kOnes[static_cast<std::size_t>(rest)]);
  } else {
    append(out, cardinal_words(static_cast<unsigned>(rest)));
  }
  return out;
}

std::string expand_currency(int64_t dollars, int cents) {
  if (dollars < 0) throw std::out_of_range("expand_currency: negative amount");
  if (cents < 0 || cents > 99) throw std::out_of_range("expand_currency: cents must be 0..99");
  std::string out = cardinal_words(static_cast<uint64_t>(dollars));
  append(out, dollars == 1 ? "dollar" : "dollars");
  if (cents != 0) {
    append(out, cardinal_words(static_cast<uint64_t>(cents)));
    append(out, cents == 1 ? "cent" : "cents");
  }
  return out;
}

std::string ordinal_words(uint64_t n) {
  std::string words = cardinal_words(n);
  const auto split = words.rfind(' ');
  const std::size_t start = split == std::string::npos ? 0 : split + 1;
  const std::string_view last(words.data() + start, words.size() - start);

  std::string replaced;
  if (last == "one") replaced = "first";
  else if (last == "two") replaced = "second";
  else if (last == "three") replaced = "third";
  else if (last == "five") replaced = "fifth";
  else if (last == "eight") replaced = "eighth";
  else if (last == "nine") replaced = "ninth";
  else if (last == "twelve") replaced = "twelfth";
  else if (last.back() == 'y') replaced = std::string(last.substr(0, last.size() - 1)) + "ieth";
  else replaced = std::string(last) + "th";
  words.replace(start, std::string::npos, replaced);
  return words;
}

std::string expand_ordinal(int64_t n) {
  if (n < 1 || n > 999) throw std::out_of_range("expand_ordinal: expected 1..999");
  return ordinal_words(static_cast<uint64_t>(n));
}

std::string_view ordinal_suffix(uint64_t n) {
  const uint64_t tens = n % 100;
  if (tens >= 11 && tens <= 13) return "th";
  switch (n % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

std::string pluralize_last_word(std::string_view words) {
  std::string out(words);
  if (out.empty()) return out;
  if (out.back() == 'y') {
    out.back() = 'i';
    out += "es";
  } else if (out.back() == 'x') {
    out += "es";
  } else {
    out += 's';
  }
  return out;
}

}  // namespace corpusforge
