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

#ifndef REQDROP_CORPUS_H_
#define REQDROP_CORPUS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqdrop/clients.h"
#include "reqdrop/jsonl.h"

namespace reqdrop {

enum class TaskCategory {
  kCreativeNarrative,
  kFrameworksPlans,
  kLongFormAcademic,
  kDiscussionExpression,
  kInformationalPractical,
};

inline constexpr std::array<TaskCategory, 5> kAllTaskCategories = {
    TaskCategory::kCreativeNarrative, TaskCategory::kFrameworksPlans,
    TaskCategory::kLongFormAcademic, TaskCategory::kDiscussionExpression,
    TaskCategory::kInformationalPractical};

std::string_view TaskCategoryName(TaskCategory category);
// Exact label match; anything else is a kParse error.
TaskCategory ParseTaskCategory(std::string_view label);

struct SeedInstruction {
  std::string id;
  std::string text;
  std::string source;
  std::optional<TaskCategory> category;
};

Json ToJson(const SeedInstruction& seed);
SeedInstruction SeedFromJson(const Json& record);

// Reads a seeds JSONL file, enforcing non-empty text and unique ids.
std::vector<SeedInstruction> ReadSeeds(const std::string& path);
void WriteSeeds(const std::string& path,
                const std::vector<SeedInstruction>& seeds);

struct Prototype {
  TaskCategory category;
  std::string id;
  std::string text;
};

std::vector<Prototype> ReadPrototypes(const std::string& path);

struct EmbeddingVector {
  std::vector<double> values;

  size_t dimension() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

struct CategoryCentroid {
  TaskCategory category;
  EmbeddingVector vector;
  int prototype_count = 0;
};

// Embeds `texts` in order. Empty input is a precondition error; a response
// with the wrong count, mixed dimensions, or non-finite entries is an
// integrity error.
std::vector<EmbeddingVector> EmbedTexts(const std::vector<std::string>& texts,
                                        EmbeddingClient& backend);

// Component-wise arithmetic mean.
EmbeddingVector CategoryCentroidOf(std::span<const EmbeddingVector> prototypes);

// One centroid per category that has prototypes, in category enum order.
std::vector<CategoryCentroid> BuildCentroids(
    const std::vector<Prototype>& prototypes,
    const std::vector<EmbeddingVector>& embeddings);

// (v . c) / (|v| |c|), clamped to [-1, 1]. Zero-norm input is a domain error.
double CosineSimilarity(const EmbeddingVector& v, const EmbeddingVector& c);

struct SelectionPolicy {
  enum class Mode { kTopK, kThreshold };
  Mode mode = Mode::kTopK;
  int k = 10;
  double tau = 0.0;

  static SelectionPolicy TopK(int k) { return {Mode::kTopK, k, 0.0}; }
  static SelectionPolicy Threshold(double tau) {
    return {Mode::kThreshold, 0, tau};
  }
};

struct CategorizedSeed {
  SeedInstruction seed;  // category is always set
  double similarity = 0.0;
};

// Assigns each candidate its argmax-similarity category (ties go to the
// earlier category in enum order), applies the policy, and returns survivors
// ordered by descending similarity, then ascending id.
std::vector<CategorizedSeed> FilterByCategory(
    const std::vector<SeedInstruction>& candidates,
    const std::vector<EmbeddingVector>& embeddings,
    const std::vector<CategoryCentroid>& centroids,
    const SelectionPolicy& policy);

}  // namespace reqdrop

#endif  // REQDROP_CORPUS_H_
