#include <benchmark/benchmark.h>

#include "corpusforge/itn.hpp"
#include "corpusforge/textnorm.hpp"

namespace {

using namespace corpusforge;

void BM_NormalizePlain(benchmark::State& state) {
  const Normalizer norm;
  const std::string text = "I would like to check the status of my claim please";
  for (auto _ : state) benchmark::DoNotOptimize(norm(text));
}
BENCHMARK(BM_NormalizePlain);

void BM_NormalizeDense(benchmark::State& state) {
  const Normalizer norm;
  const std::string text =
      "My 401k paid $1,250.45 on the 21st, 50% of the 2022 total; call 4680 or see Dr Smith at "
      "12 Main St.";
  for (auto _ : state) benchmark::DoNotOptimize(norm(text));
}
BENCHMARK(BM_NormalizeDense);

void BM_InverseNormalize(benchmark::State& state) {
  const auto rules = ItnRules::from_norm_rules(NormRules::defaults());
  const std::string text = "i need my w two and the covid nineteen form for my four o one k";
  for (auto _ : state) benchmark::DoNotOptimize(inverse_normalize(text, rules));
}
BENCHMARK(BM_InverseNormalize);

}  // namespace
