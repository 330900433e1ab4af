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

#include <omp.h>

#include <exception>
#include <limits>

#include "reqdrop/bt.h"
#include "reqdrop/error.h"
#include "reqdrop/kernels.h"

namespace reqdrop::kernels {
namespace {

// Exceptions must not cross the OpenMP region boundary. Each failing index is
// recorded and the lowest one is rethrown after the loop.
class FirstFailure {
 public:
  void Record(long index) {
    #pragma omp critical(reqdrop_first_failure)
    {
      if (index < index_) {
        index_ = index;
        error_ = std::current_exception();
      }
    }
  }
  void RethrowIfAny() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  long index_ = std::numeric_limits<long>::max();
  std::exception_ptr error_;
};

}  // namespace

int MaxThreads() { return omp_get_max_threads(); }

namespace parallel {

std::vector<double> SimilarityMatrix(
    std::span<const EmbeddingVector> rows,
    std::span<const CategoryCentroid> centroids) {
  const long cols = static_cast<long>(centroids.size());
  const long cells = static_cast<long>(rows.size()) * cols;
  std::vector<double> out(cells);
  FirstFailure failure;
  #pragma omp parallel for schedule(static)
  for (long cell = 0; cell < cells; ++cell) {
    try {
      out[cell] = CosineSimilarity(rows[cell / cols], centroids[cell % cols].vector);
    } catch (...) {
      failure.Record(cell);
    }
  }
  failure.RethrowIfAny();
  return out;
}

std::vector<MetricTriple> EvaluateRankings(std::span<const Ranking> predicted,
                                           std::span<const Ranking> golden) {
  Require(predicted.size() == golden.size(), "ranking batch sizes differ");
  const long n = static_cast<long>(predicted.size());
  std::vector<MetricTriple> out(n);
  FirstFailure failure;
  #pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = EvaluateItem(predicted[i], golden[i]);
    } catch (...) {
      failure.Record(i);
    }
  }
  failure.RethrowIfAny();
  return out;
}

std::vector<double> OracleScores(std::span<const OracleTask> tasks) {
  const long n = static_cast<long>(tasks.size());
  std::vector<double> out(n);
  #pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    out[i] = OracleScore(tasks[i].constraints, tasks[i].response);
  }
  return out;
}

std::vector<std::vector<double>> ExtractFeatureRows(
    std::span<const FeatureTask> tasks) {
  const long n = static_cast<long>(tasks.size());
  std::vector<std::vector<double>> out(n);
  FirstFailure failure;
  #pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = ExtractFeatures(tasks[i].query, tasks[i].response);
    } catch (...) {
      failure.Record(i);
    }
  }
  failure.RethrowIfAny();
  return out;
}

}  // namespace parallel
}  // namespace reqdrop::kernels
