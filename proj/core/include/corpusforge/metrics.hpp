#ifndef CORPUSFORGE_METRICS_HPP_
#define CORPUSFORGE_METRICS_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpusforge/textnorm.hpp"

namespace corpusforge {

struct ErrorBreakdown {
  int64_t substitutions = 0;
  int64_t insertions = 0;
  int64_t deletions = 0;
  int64_t ref_len = 0;
  // (S + I + D) / ref_len; +inf when ref_len is 0 and there are errors.
  double rate = 0.0;

  int64_t errors() const { return substitutions + insertions + deletions; }
};

struct EditResult {
  int64_t distance = 0;
  ErrorBreakdown breakdown;
};

// Unit-cost Levenshtein distance between `ref` and `hyp`, plus the
// operation counts of one optimal alignment. Where alignments tie the
// choice is substitution (or match), then insertion, then deletion, so the
// breakdown is reproducible. O(|ref|·|hyp|) time, O(|hyp|) memory.
template <typename T>
EditResult edit_distance(std::span<const T> ref, std::span<const T> hyp) {
  struct Cell {
    int64_t s = 0, i = 0, d = 0;
    int64_t cost() const { return s + i + d; }
  };
  const std::size_t m = hyp.size();
  std::vector<Cell> prev(m + 1);
  std::vector<Cell> curr(m + 1);
  for (std::size_t j = 1; j <= m; ++j) prev[j] = {0, static_cast<int64_t>(j), 0};
  for (std::size_t r = 1; r <= ref.size(); ++r) {
    curr[0] = {0, 0, static_cast<int64_t>(r)};
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = ref[r - 1] == hyp[j - 1];
      Cell diag = prev[j - 1];
      if (!same) ++diag.s;
      Cell ins = curr[j - 1];
      ++ins.i;
      Cell del = prev[j];
      ++del.d;
      Cell best = diag;
      if (ins.cost() < best.cost()) best = ins;
      if (del.cost() < best.cost()) best = del;
      curr[j] = best;
    }
    std::swap(prev, curr);
  }
  const Cell& last = prev[m];
  EditResult result;
  result.distance = last.cost();
  result.breakdown.substitutions = last.s;
  result.breakdown.insertions = last.i;
  result.breakdown.deletions = last.d;
  result.breakdown.ref_len = static_cast<int64_t>(ref.size());
  if (!ref.empty()) {
    result.breakdown.rate = static_cast<double>(result.distance) / static_cast<double>(ref.size());
  } else {
    result.breakdown.rate = result.distance == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return result;
}

template <typename T>
EditResult edit_distance(const std::vector<T>& ref, const std::vector<T>& hyp) {
  return edit_distance(std::span<const T>(ref), std::span<const T>(hyp));
}

// Whitespace tokens of `text`.
std::vector<std::string_view> word_tokens(std::string_view text);

// Code points of `text` with whitespace runs collapsed to one space and
// leading/trailing whitespace removed.
std::u32string char_tokens(std::string_view text);

// Word-level breakdown. Throws DataError when `ref` has no words.
ErrorBreakdown word_errors(std::string_view ref, std::string_view hyp);
// Character-level breakdown. Throws DataError when `ref` is blank.
ErrorBreakdown char_errors(std::string_view ref, std::string_view hyp);

// Word error rate; may exceed 1. Throws DataError on an empty reference.
double wer(std::string_view ref, std::string_view hyp);
inline double wer(const NormalizedText& ref, const NormalizedText& hyp) {
  return wer(ref.text, hyp.text);
}

// Character error rate (single inter-word spaces count as characters).
double cer(std::string_view ref, std::string_view hyp);
inline double cer(const NormalizedText& ref, const NormalizedText& hyp) {
  return cer(ref.text, hyp.text);
}

struct CorpusRates {
  double wer = 0.0;
  double cer = 0.0;
  int64_t n_utts = 0;
  int64_t word_errors = 0;
  int64_t ref_words = 0;
  int64_t char_errors = 0;
  int64_t ref_chars = 0;
};

struct RefHypPair {
  std::string ref;
  std::string hyp;
};

// Pooled rates: total edits over total reference length, separately for
// words and characters. Work is split over `threads` workers (0 = hardware
// concurrency); the result does not depend on the split. Throws DataError
// naming the first pair whose reference is empty.
CorpusRates corpus_rates(std::span<const RefHypPair> pairs, unsigned threads = 0);

}  // namespace corpusforge

#endif  // CORPUSFORGE_METRICS_HPP_
