#ifndef CORPUSFORGE_NUMBER_WORDS_HPP_
#define CORPUSFORGE_NUMBER_WORDS_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace corpusforge {

struct YearRange {
  int low = 1930;
  int high = 2030;
};

// American-English cardinal words without "and": 156 -> "one hundred fifty
// six". Throws std::out_of_range outside 0..999999.
std::string expand_cardinal(int64_t n);

// Same reading for any value below one quadrillion; used for currency and
// comma-grouped quantities.
std::string cardinal_words(uint64_t n);

// Digit-by-digit reading: "4680" -> "four six eight zero". Throws
// std::invalid_argument on empty or non-digit input.
std::string expand_digits(std::string_view digits);

// Four-digit year reading. 1930-1999 -> "nineteen ninety five",
// 2000-2009 -> "two thousand [n]", 2010 onward -> "two thousand twenty two".
// Throws std::out_of_range outside `range`.
std::string expand_year(int n, YearRange range = {});

// "<cardinal> dollar(s)[ <cardinal> cent(s)]". Throws std::out_of_range for
// negative dollars or cents outside 0..99.
std::string expand_currency(int64_t dollars, int cents);

// Ordinal words for 1..999 ("twenty first"). Throws std::out_of_range.
std::string expand_ordinal(int64_t n);

// Ordinal reading for any value cardinal_words accepts, 0 -> "zeroth".
std::string ordinal_words(uint64_t n);

// Correct English suffix for n: "st", "nd", "rd" or "th".
std::string_view ordinal_suffix(uint64_t n);

// "ninety" -> "nineties", "twenty two" -> "twenty twos".
std::string pluralize_last_word(std::string_view words);

}  // namespace corpusforge

#endif  // CORPUSFORGE_NUMBER_WORDS_HPP_
