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

namespace reqdrop::kernels {

std::vector<double> SimilarityMatrix(std::span<const EmbeddingVector> rows,
                                     std::span<const CategoryCentroid> centroids,
                                     Exec exec) {
  return exec == Exec::kSerial ? serial::SimilarityMatrix(rows, centroids)
                               : parallel::SimilarityMatrix(rows, centroids);
}

std::vector<MetricTriple> EvaluateRankings(std::span<const Ranking> predicted,
                                           std::span<const Ranking> golden,
                                           Exec exec) {
  return exec == Exec::kSerial ? serial::EvaluateRankings(predicted, golden)
                               : parallel::EvaluateRankings(predicted, golden);
}

std::vector<double> OracleScores(std::span<const OracleTask> tasks, Exec exec) {
  return exec == Exec::kSerial ? serial::OracleScores(tasks)
                               : parallel::OracleScores(tasks);
}

std::vector<std::vector<double>> ExtractFeatureRows(
    std::span<const FeatureTask> tasks, Exec exec) {
  return exec == Exec::kSerial ? serial::ExtractFeatureRows(tasks)
                               : parallel::ExtractFeatureRows(tasks);
}

}  // namespace reqdrop::kernels
