#include <benchmark/benchmark.h>

#include "qalam/eval.hpp"
#include "qalam/matcher.hpp"
#include "qalam/recognizer.hpp"
#include "qalam/stock_glyphs.hpp"
#include "qalam/synth.hpp"

namespace {

using namespace qalam;

const TemplateDatabase& db() {
  static const TemplateDatabase instance = stock_database();
  return instance;
}

const std::vector<GroundTruthWord>& corpus() {
  static const auto words = [] {
    auto specs = reference_word_specs();
    const auto extra = random_word_specs(RandomWordOptions{});
    specs.insert(specs.end(), extra.begin(), extra.end());
    return generate_corpus(specs, db());
  }();
  return words;
}

void BM_FrameSimilarity(benchmark::State& state) {
  const auto measure = static_cast<SimilarityMeasure>(state.range(0));
  const auto a = db().packed()[0];
  const auto b = db().packed()[1];
  for (auto _ : state) benchmark::DoNotOptimize(frame_similarity(a, b, measure));
}
BENCHMARK(BM_FrameSimilarity)->Arg(0)->Arg(1);

void BM_NormalizeToFrame(benchmark::State& state) {
  const auto seg = next_segment(corpus()[1].image, 0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalize_to_frame(seg.content->image));
}
BENCHMARK(BM_NormalizeToFrame)->Arg(35)->Arg(143);

void BM_MatchSegment(benchmark::State& state) {
  const auto seg = next_segment(corpus()[1].image, 0, 35);
  for (auto _ : state) benchmark::DoNotOptimize(match_segment(seg.content->image, db(), MatchConfig{}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(db().size()));
}
BENCHMARK(BM_MatchSegment);

void BM_RecognizeWord(benchmark::State& state) {
  SegmenterConfig cfg;
  cfg.max_widenings = static_cast<int>(state.range(0));
  cfg.match.accept_threshold = 0.8;
  const auto& word = corpus()[1].image;
  for (auto _ : state) benchmark::DoNotOptimize(recognize_word(word, db(), cfg));
}
BENCHMARK(BM_RecognizeWord)->Arg(0)->Arg(3);

void BM_ComposeWord(benchmark::State& state) {
  auto spec = reference_word_specs()[1];
  spec.noise_flip_rate = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(compose_word(spec, db()));
}
BENCHMARK(BM_ComposeWord);

void BM_EvaluateCorpus(benchmark::State& state) {
  const SegmenterConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(corpus(), db(), cfg, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_EvaluateCorpus)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StockDatabase(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stock_database());
}
BENCHMARK(BM_StockDatabase)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
