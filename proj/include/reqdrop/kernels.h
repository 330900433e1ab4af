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

#ifndef REQDROP_KERNELS_H_
#define REQDROP_KERNELS_H_

#include <span>
#include <string_view>
#include <vector>

#include "reqdrop/checkable.h"
#include "reqdrop/corpus.h"
#include "reqdrop/metrics.h"
#include "reqdrop/ranking.h"

namespace reqdrop {

enum class Exec { kSerial, kParallel };

// Data-parallel inner loops of the toolkit. Each has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; both apply the
// same per-element function and write disjoint slots, so their outputs are
// bitwise identical. The first failing element's exception is rethrown.
namespace kernels {

struct OracleTask {
  std::span<const CheckableConstraint> constraints;
  std::string_view response;
};

struct FeatureTask {
  std::string_view query;
  std::string_view response;
};

// Row-major rows x centroids cosine similarities.
std::vector<double> SimilarityMatrix(std::span<const EmbeddingVector> rows,
                                     std::span<const CategoryCentroid> centroids,
                                     Exec exec);

std::vector<MetricTriple> EvaluateRankings(std::span<const Ranking> predicted,
                                           std::span<const Ranking> golden,
                                           Exec exec);

std::vector<double> OracleScores(std::span<const OracleTask> tasks, Exec exec);

std::vector<std::vector<double>> ExtractFeatureRows(
    std::span<const FeatureTask> tasks, Exec exec);

int MaxThreads();

namespace serial {
std::vector<double> SimilarityMatrix(std::span<const EmbeddingVector> rows,
                                     std::span<const CategoryCentroid> centroids);
std::vector<MetricTriple> EvaluateRankings(std::span<const Ranking> predicted,
                                           std::span<const Ranking> golden);
std::vector<double> OracleScores(std::span<const OracleTask> tasks);
std::vector<std::vector<double>> ExtractFeatureRows(
    std::span<const FeatureTask> tasks);
}  // namespace serial

namespace parallel {
std::vector<double> SimilarityMatrix(std::span<const EmbeddingVector> rows,
                                     std::span<const CategoryCentroid> centroids);
std::vector<MetricTriple> EvaluateRankings(std::span<const Ranking> predicted,
                                           std::span<const Ranking> golden);
std::vector<double> OracleScores(std::span<const OracleTask> tasks);
std::vector<std::vector<double>> ExtractFeatureRows(
    std::span<const FeatureTask> tasks);
}  // namespace parallel

}  // namespace kernels
}  // namespace reqdrop

#endif  // REQDROP_KERNELS_H_
