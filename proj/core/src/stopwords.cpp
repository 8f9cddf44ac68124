#include "corpusforge/stopwords.hpp"

namespace corpusforge {

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",      "about",  "after",  "again", "all",     "also",   "am",    "an",
      "and",    "any",    "are",    "as",    "at",      "be",     "been",  "before",
      "but",    "by",     "can",    "could", "did",     "do",     "does",  "doing",
      "don't",  "for",    "from",   "get",   "got",     "had",    "has",   "have",
      "having", "he",     "her",    "here",  "him",     "his",    "how",   "i",
      "i'd",    "i'll",   "i'm",    "i've",  "if",      "in",     "into",  "is",
      "it",     "it's",   "its",    "just",  "like",    "me",     "might", "my",
      "no",     "not",    "now",    "of",    "oh",      "okay",   "ok",    "on",
      "one",    "or",     "our",    "out",   "please",  "so",     "some",  "than",
      "that",   "that's", "the",    "their", "them",    "then",   "there", "these",
      "they",   "this",   "those",  "to",    "too",     "uh",     "um",    "up",
      "us",     "very",   "was",    "we",    "well",    "were",   "what",  "when",
      "where",  "which",  "who",    "why",   "will",    "with",   "would", "yeah",
      "yes",    "you",    "you're", "your",  "hmm",     "mhm",    "alright", "right",
      "just",   "should", "want",   "wanna", "gonna",   "need",   "know",  "mean",
  };
  return words;
}

const std::set<std::string>& default_common_words() {
  static const std::set<std::string> words = [] {
    std::set<std::string> w = default_stopwords();
    for (const char* extra : {"see",     "saw",     "seen",    "call",   "called", "calling",
                              "ask",     "asked",   "visit",   "visited", "talk",  "talked",
                              "speak",   "spoke",   "tell",    "told",   "meet",   "met",
                              "contact", "email",   "phone",   "said",   "says",   "named",
                              "name",    "dear",    "hi",      "hello",  "thanks", "thank",
                              "per",     "via",     "new",     "old",    "good",   "great",
                              "your",    "his",     "her",     "from",   "with",   "whose",
                              "doctor",  "see",     "appointment", "office", "by", "was"}) {
      w.insert(extra);
    }
    return w;
  }();
  return words;
}

}  // namespace corpusforge
