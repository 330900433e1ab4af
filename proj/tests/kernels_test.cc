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

#include "reqdrop/kernels.h"

#include <gtest/gtest.h>

#include "reqdrop/bt.h"
#include "reqdrop/harness/synthetic.h"
#include "reqdrop/metrics.h"
#include "reqdrop/variation.h"
#include "test_util.h"

namespace reqdrop {
namespace {

TEST(KernelsTest, EvaluateRankingsSerialEqualsParallel) {
  Rng rng(21);
  std::vector<Ranking> predicted, golden;
  for (int i = 0; i < 3000; ++i) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(8));
    predicted.push_back(testing::RandomPermutation(rng, n));
    golden.push_back(testing::RandomPermutation(rng, n));
  }
  const auto s = kernels::serial::EvaluateRankings(predicted, golden);
  const auto p = kernels::parallel::EvaluateRankings(predicted, golden);
  ASSERT_EQ(s.size(), p.size());
  for (size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].correlation, p[i].correlation);
    EXPECT_EQ(s[i].il, p[i].il);
    EXPECT_EQ(s[i].pl, p[i].pl);
    EXPECT_EQ(s[i].degenerate, p[i].degenerate);
    EXPECT_EQ(s[i].correlation, EvaluateItem(predicted[i], golden[i]).correlation);
  }
}

TEST(KernelsTest, EvaluateRankingsRejectsMismatch) {
  std::vector<Ranking> a = {Ranking{{1, 2}}}, b = {Ranking{{1, 2, 3}}};
  EXPECT_ANY_THROW(kernels::EvaluateRankings(a, b, Exec::kSerial));
  EXPECT_ANY_THROW(kernels::EvaluateRankings(a, b, Exec::kParallel));
}

TEST(KernelsTest, SimilaritySerialEqualsParallel) {
  Rng rng(22);
  auto random_vec = [&] {
    EmbeddingVector v;
    for (int d = 0; d < 16; ++d) v.values.push_back(rng.Gaussian());
    return v;
  };
  std::vector<EmbeddingVector> rows;
  for (int i = 0; i < 500; ++i) rows.push_back(random_vec());
  std::vector<CategoryCentroid> centroids;
  for (TaskCategory c : kAllTaskCategories) centroids.push_back({c, random_vec(), 1});
  const auto s = kernels::serial::SimilarityMatrix(rows, centroids);
  const auto p = kernels::parallel::SimilarityMatrix(rows, centroids);
  ASSERT_EQ(s.size(), rows.size() * centroids.size());
  EXPECT_EQ(s, p);
  EXPECT_DOUBLE_EQ(s[7], CosineSimilarity(rows[1], centroids[2].vector));
}

TEST(KernelsTest, OracleAndFeatureSerialEqualsParallel) {
  Rng rng(23);
  std::vector<std::vector<CheckableConstraint>> sets;
  std::vector<std::string> queries, responses;
  for (int i = 0; i < 300; ++i) {
    sets.push_back(synthetic::SyntheticConstraints(rng.Next(), 5));
    std::vector<std::string> texts;
    for (const auto& c : sets.back()) texts.push_back(RenderCheckable(c));
    const std::string query = ComposeText("Write a story.", texts);
    queries.push_back(query);
    responses.push_back(synthetic::TemplateResponse(query));
  }
  std::vector<kernels::OracleTask> oracle_tasks;
  std::vector<kernels::FeatureTask> feature_tasks;
  for (size_t i = 0; i < sets.size(); ++i) {
    oracle_tasks.push_back({sets[i], responses[i]});
    feature_tasks.push_back({queries[i], responses[i]});
  }
  EXPECT_EQ(kernels::serial::OracleScores(oracle_tasks),
            kernels::parallel::OracleScores(oracle_tasks));
  EXPECT_EQ(kernels::serial::ExtractFeatureRows(feature_tasks),
            kernels::parallel::ExtractFeatureRows(feature_tasks));
  EXPECT_EQ(kernels::serial::ExtractFeatureRows(feature_tasks)[0],
            ExtractFeatures(queries[0], responses[0]));
}

TEST(KernelsTest, MaxThreadsIsPositive) { EXPECT_GE(kernels::MaxThreads(), 1); }

}  // namespace
}  // namespace reqdrop
