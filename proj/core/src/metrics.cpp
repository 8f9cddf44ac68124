#include "corpusforge/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge {
namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

std::vector<std::string_view> word_tokens(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ws(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ws(text[j])) ++j;
    if (j > i) words.push_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

std::u32string char_tokens(std::string_view text) {
  const std::u32string decoded = utf8::decode(text);
  std::u32string out;
  out.reserve(decoded.size());
  bool pending_space = false;
  for (char32_t c : decoded) {
    if (c < 0x80 && is_ws(static_cast<char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

ErrorBreakdown word_errors(std::string_view ref, std::string_view hyp) {
  const auto r = word_tokens(ref);
  if (r.empty()) throw DataError("empty reference: word error rate is undefined");
  return edit_distance(r, word_tokens(hyp)).breakdown;
}

ErrorBreakdown char_errors(std::string_view ref, std::string_view hyp) {
  const auto r = char_tokens(ref);
  if (r.empty()) throw DataError("empty reference: character error rate is undefined");
  const auto h = char_tokens(hyp);
  return edit_distance(std::span<const char32_t>(r), std::span<const char32_t>(h)).breakdown;
}

double wer(std::string_view ref, std::string_view hyp) { return word_errors(ref, hyp).rate; }

double cer(std::string_view ref, std::string_view hyp) { return char_errors(ref, hyp).rate; }

CorpusRates corpus_rates(std::span<const RefHypPair> pairs, unsigned threads) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (word_tokens(pairs[i].ref).empty()) {
      throw DataError("empty reference at index " + std::to_string(i));
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, pairs.size())));

  struct Totals {
    int64_t word_errors = 0, ref_words = 0, char_errors = 0, ref_chars = 0;
  };
  std::vector<Totals> partial(threads);
  auto work = [&](unsigned worker) {
    Totals& t = partial[worker];
    for (std::size_t i = worker; i < pairs.size(); i += threads) {
      const auto w = word_errors(pairs[i].ref, pairs[i].hyp);
      const auto c = char_errors(pairs[i].ref, pairs[i].hyp);
      t.word_errors += w.errors();
      t.ref_words += w.ref_len;
      t.char_errors += c.errors();
      t.ref_chars += c.ref_len;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  CorpusRates rates;
  rates.n_utts = static_cast<int64_t>(pairs.size());
  for (const auto& t : partial) {
    rates.word_errors += t.word_errors;
    rates.ref_words += t.ref_words;
    rates.char_errors += t.char_errors;
    rates.ref_chars += t.ref_chars;
  }
  if (rates.ref_words > 0) {
    rates.wer = static_cast<double>(rates.word_errors) / static_cast<double>(rates.ref_words);
    rates.cer = static_cast<double>(rates.char_errors) / static_cast<double>(rates.ref_chars);
  }
  return rates;
}

}  // namespace corpusforge
