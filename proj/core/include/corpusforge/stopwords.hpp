#ifndef CORPUSFORGE_STOPWORDS_HPP_
#define CORPUSFORGE_STOPWORDS_HPP_

#include <set>
#include <string>

namespace corpusforge {

// Function words and call-center filler shipped as the default keyword
// stoplist for frequency filtering.
const std::set<std::string>& default_stopwords();

// default_stopwords() plus common verbs and greetings. A token from this set
// directly before "dr"/"st" is not taken to be a street name.
const std::set<std::string>& default_common_words();

}  // namespace corpusforge

#endif  // CORPUSFORGE_STOPWORDS_HPP_
