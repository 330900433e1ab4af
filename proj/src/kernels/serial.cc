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

#include "reqdrop/bt.h"
#include "reqdrop/error.h"
#include "reqdrop/kernels.h"

namespace reqdrop::kernels::serial {

std::vector<double> SimilarityMatrix(
    std::span<const EmbeddingVector> rows,
    std::span<const CategoryCentroid> centroids) {
  const size_t cols = centroids.size();
  std::vector<double> out(rows.size() * cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < cols; ++c) {
      out[r * cols + c] = CosineSimilarity(rows[r], centroids[c].vector);
    }
  }
  return out;
}

std::vector<MetricTriple> EvaluateRankings(std::span<const Ranking> predicted,
                                           std::span<const Ranking> golden) {
  Require(predicted.size() == golden.size(), "ranking batch sizes differ");
  std::vector<MetricTriple> out(predicted.size());
  for (size_t i = 0; i < predicted.size(); ++i) {
    out[i] = EvaluateItem(predicted[i], golden[i]);
  }
  return out;
}

std::vector<double> OracleScores(std::span<const OracleTask> tasks) {
  std::vector<double> out(tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) {
    out[i] = OracleScore(tasks[i].constraints, tasks[i].response);
  }
  return out;
}

std::vector<std::vector<double>> ExtractFeatureRows(
    std::span<const FeatureTask> tasks) {
  std::vector<std::vector<double>> out(tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) {
    out[i] = ExtractFeatures(tasks[i].query, tasks[i].response);
  }
  return out;
}

}  // namespace reqdrop::kernels::serial
