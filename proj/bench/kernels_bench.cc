// Copyright 2026 The Reqdrop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "reqdrop/checkable.h"
#include "reqdrop/harness/synthetic.h"
#include "reqdrop/kernels.h"
#include "reqdrop/rng.h"
#include "reqdrop/variation.h"

namespace reqdrop {
namespace {

Ranking Permutation(Rng& rng, int n) {
  Ranking r;
  for (int i = 1; i <= n; ++i) r.ranks.push_back(i);
  rng.Shuffle(r.ranks);
  return r;
}

struct RankingBatch {
  std::vector<Ranking> predicted, golden;
};

RankingBatch MakeRankings(size_t count) {
  Rng rng(1);
  RankingBatch b;
  for (size_t i = 0; i < count; ++i) {
    b.predicted.push_back(Permutation(rng, 5));
    b.golden.push_back(Permutation(rng, 5));
  }
  return b;
}

template <bool kParallel>
void BM_EvaluateRankings(benchmark::State& state) {
  const auto b = MakeRankings(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = kParallel ? kernels::parallel::EvaluateRankings(b.predicted, b.golden)
                         : kernels::serial::EvaluateRankings(b.predicted, b.golden);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_SimilarityMatrix(benchmark::State& state) {
  Rng rng(2);
  auto vec = [&] {
    EmbeddingVector v;
    for (int d = 0; d < 256; ++d) v.values.push_back(rng.Gaussian());
    return v;
  };
  std::vector<EmbeddingVector> rows;
  for (int64_t i = 0; i < state.range(0); ++i) rows.push_back(vec());
  std::vector<CategoryCentroid> centroids;
  for (TaskCategory c : kAllTaskCategories) centroids.push_back({c, vec(), 1});
  for (auto _ : state) {
    auto out = kParallel ? kernels::parallel::SimilarityMatrix(rows, centroids)
                         : kernels::serial::SimilarityMatrix(rows, centroids);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct TextBatch {
  std::vector<std::vector<CheckableConstraint>> sets;
  std::vector<std::string> queries, responses;
};

TextBatch MakeTexts(size_t count) {
  TextBatch b;
  for (size_t i = 0; i < count; ++i) {
    b.sets.push_back(synthetic::SyntheticConstraints(i, 5));
    std::vector<std::string> texts;
    for (const auto& c : b.sets.back()) texts.push_back(RenderCheckable(c));
    b.queries.push_back(ComposeText("Write a short story about a lighthouse.", texts));
    b.responses.push_back(synthetic::TemplateResponse(b.queries.back()));
  }
  return b;
}

template <bool kParallel>
void BM_OracleScores(benchmark::State& state) {
  const auto b = MakeTexts(static_cast<size_t>(state.range(0)));
  std::vector<kernels::OracleTask> tasks;
  for (size_t i = 0; i < b.sets.size(); ++i) tasks.push_back({b.sets[i], b.responses[i]});
  for (auto _ : state) {
    auto out = kParallel ? kernels::parallel::OracleScores(tasks)
                         : kernels::serial::OracleScores(tasks);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_ExtractFeatureRows(benchmark::State& state) {
  const auto b = MakeTexts(static_cast<size_t>(state.range(0)));
  std::vector<kernels::FeatureTask> tasks;
  for (size_t i = 0; i < b.queries.size(); ++i) tasks.push_back({b.queries[i], b.responses[i]});
  for (auto _ : state) {
    auto out = kParallel ? kernels::parallel::ExtractFeatureRows(tasks)
                         : kernels::serial::ExtractFeatureRows(tasks);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_EvaluateRankings<false>)->Name("EvaluateRankings/serial")->Arg(1 << 16);
BENCHMARK(BM_EvaluateRankings<true>)->Name("EvaluateRankings/parallel")->Arg(1 << 16);
BENCHMARK(BM_SimilarityMatrix<false>)->Name("SimilarityMatrix/serial")->Arg(4096);
BENCHMARK(BM_SimilarityMatrix<true>)->Name("SimilarityMatrix/parallel")->Arg(4096);
BENCHMARK(BM_OracleScores<false>)->Name("OracleScores/serial")->Arg(2048);
BENCHMARK(BM_OracleScores<true>)->Name("OracleScores/parallel")->Arg(2048);
BENCHMARK(BM_ExtractFeatureRows<false>)->Name("ExtractFeatureRows/serial")->Arg(2048);
BENCHMARK(BM_ExtractFeatureRows<true>)->Name("ExtractFeatureRows/parallel")->Arg(2048);

}  // namespace
}  // namespace reqdrop

BENCHMARK_MAIN();
