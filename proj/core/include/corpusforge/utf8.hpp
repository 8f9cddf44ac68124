#ifndef CORPUSFORGE_UTF8_HPP_
#define CORPUSFORGE_UTF8_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace corpusforge::utf8 {

inline constexpr char32_t kReplacement = U'�';

// Malformed sequences decode to kReplacement, one per offending byte.
std::u32string decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view text);

}  // namespace corpusforge::utf8

#endif  // CORPUSFORGE_UTF8_HPP_
