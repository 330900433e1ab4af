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

#include "reqdrop/corpus.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "reqdrop/error.h"
#include "reqdrop/kernels.h"

namespace reqdrop {
namespace {

bool IsBlank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

std::string_view TaskCategoryName(TaskCategory category) {
  switch (category) {
    case TaskCategory::kCreativeNarrative: return "CreativeNarrative";
    case TaskCategory::kFrameworksPlans: return "FrameworksPlans";
    case TaskCategory::kLongFormAcademic: return "LongFormAcademic";
    case TaskCategory::kDiscussionExpression: return "DiscussionExpression";
    case TaskCategory::kInformationalPractical: return "InformationalPractical";
  }
  return "";
}

TaskCategory ParseTaskCategory(std::string_view label) {
  for (TaskCategory category : kAllTaskCategories) {
    if (TaskCategoryName(category) == label) return category;
  }
  Fail(ErrorKind::kParse, "unknown task category '" + std::string(label) + "'");
}

Json ToJson(const SeedInstruction& seed) {
  Json out = {{"id", seed.id}, {"text", seed.text}, {"source", seed.source}};
  if (seed.category) out["category"] = TaskCategoryName(*seed.category);
  return out;
}

SeedInstruction SeedFromJson(const Json& record) {
  SeedInstruction seed;
  seed.id = record.at("id").get<std::string>();
  seed.text = record.at("text").get<std::string>();
  seed.source = record.value("source", "");
  if (record.contains("category") && !record["category"].is_null()) {
    seed.category = ParseTaskCategory(record["category"].get<std::string>());
  }
  if (seed.id.empty()) Fail(ErrorKind::kValidation, "seed id is empty");
  if (IsBlank(seed.text)) {
    Fail(ErrorKind::kValidation, "seed '" + seed.id + "' has empty text");
  }
  return seed;
}

std::vector<SeedInstruction> ReadSeeds(const std::string& path) {
  std::vector<SeedInstruction> seeds;
  std::set<std::string> ids;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    SeedInstruction seed = SeedFromJson(record);
    if (!ids.insert(seed.id).second) {
      Fail(ErrorKind::kValidation, "duplicate seed id '" + seed.id + "'");
    }
    seeds.push_back(std::move(seed));
  });
  return seeds;
}

void WriteSeeds(const std::string& path,
                const std::vector<SeedInstruction>& seeds) {
  std::vector<Json> records;
  records.reserve(seeds.size());
  for (const auto& seed : seeds) records.push_back(ToJson(seed));
  WriteFileAtomic(path, DumpJsonl(records));
}

std::vector<Prototype> ReadPrototypes(const std::string& path) {
  std::vector<Prototype> prototypes;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    Prototype proto;
    proto.category = ParseTaskCategory(record.at("category").get<std::string>());
    proto.id = record.at("id").get<std::string>();
    proto.text = record.at("text").get<std::string>();
    if (IsBlank(proto.text)) {
      Fail(ErrorKind::kValidation, "prototype '" + proto.id + "' has empty text");
    }
    prototypes.push_back(std::move(proto));
  });
  return prototypes;
}

std::vector<EmbeddingVector> EmbedTexts(const std::vector<std::string>& texts,
                                        EmbeddingClient& backend) {
  Require(!texts.empty(), "empty batch");
  auto raw = backend.Embed(texts);
  if (raw.size() != texts.size()) {
    Fail(ErrorKind::kIntegrity,
         "embedding backend returned " + std::to_string(raw.size()) +
             " vectors for " + std::to_string(texts.size()) + " inputs");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(raw.size());
  const size_t dimension = raw.front().size();
  for (auto& values : raw) {
    if (values.empty() || values.size() != dimension) {
      Fail(ErrorKind::kIntegrity,
           "embedding dimension mismatch: " + std::to_string(values.size()) +
               " vs " + std::to_string(dimension));
    }
    for (double x : values) {
      if (!std::isfinite(x)) {
        Fail(ErrorKind::kIntegrity, "non-finite embedding entry");
      }
    }
    out.push_back(EmbeddingVector{std::move(values)});
  }
  return out;
}

EmbeddingVector CategoryCentroidOf(
    std::span<const EmbeddingVector> prototypes) {
  Require(!prototypes.empty(), "centroid of an empty prototype set");
  const size_t dimension = prototypes.front().dimension();
  EmbeddingVector mean{std::vector<double>(dimension, 0.0)};
  for (const auto& p : prototypes) {
    Require(p.dimension() == dimension, "prototype dimension mismatch");
    for (size_t i = 0; i < dimension; ++i) mean.values[i] += p.values[i];
  }
  const double count = static_cast<double>(prototypes.size());
  for (double& x : mean.values) x /= count;
  return mean;
}

std::vector<CategoryCentroid> BuildCentroids(
    const std::vector<Prototype>& prototypes,
    const std::vector<EmbeddingVector>& embeddings) {
  Require(prototypes.size() == embeddings.size(),
          "prototype/embedding count mismatch");
  std::map<TaskCategory, std::vector<EmbeddingVector>> grouped;
  for (size_t i = 0; i < prototypes.size(); ++i) {
    grouped[prototypes[i].category].push_back(embeddings[i]);
  }
  std::vector<CategoryCentroid> centroids;
  for (auto& [category, vectors] : grouped) {
    centroids.push_back({category, CategoryCentroidOf(vectors),
                         static_cast<int>(vectors.size())});
  }
  return centroids;
}

double CosineSimilarity(const EmbeddingVector& v, const EmbeddingVector& c) {
  Require(v.dimension() == c.dimension(), "cosine of unequal dimensions");
  double dot = 0.0, vv = 0.0, cc = 0.0;
  for (size_t i = 0; i < v.dimension(); ++i) {
    dot += v.values[i] * c.values[i];
    vv += v.values[i] * v.values[i];
    cc += c.values[i] * c.values[i];
  }
  if (vv == 0.0 || cc == 0.0) {
    Fail(ErrorKind::kDomain, "cosine similarity of a zero-norm vector");
  }
  return std::clamp(dot / (std::sqrt(vv) * std::sqrt(cc)), -1.0, 1.0);
}

std::vector<CategorizedSeed> FilterByCategory(
    const std::vector<SeedInstruction>& candidates,
    const std::vector<EmbeddingVector>& embeddings,
    const std::vector<CategoryCentroid>& centroids,
    const SelectionPolicy& policy) {
  Require(!centroids.empty(), "no category centroids");
  Require(candidates.size() == embeddings.size(),
          "candidate/embedding count mismatch");
  if (policy.mode == SelectionPolicy::Mode::kTopK) {
    Require(policy.k >= 1, "top-k policy needs k >= 1");
  }

  // Argmax ties resolve by enum order, so scan centroids in that order.
  std::vector<CategoryCentroid> ordered = centroids;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     return a.category < b.category;
                   });
  for (size_t i = 1; i < ordered.size(); ++i) {
    Require(ordered[i].category != ordered[i - 1].category,
            "duplicate centroid for one category");
  }

  const size_t cols = ordered.size();
  const std::vector<double> sims =
      kernels::SimilarityMatrix(embeddings, ordered, Exec::kParallel);

  std::vector<CategorizedSeed> assigned;
  assigned.reserve(candidates.size());
  for (size_t row = 0; row < candidates.size(); ++row) {
    size_t best = 0;
    for (size_t col = 1; col < cols; ++col) {
      if (sims[row * cols + col] > sims[row * cols + best]) best = col;
    }
    CategorizedSeed out{candidates[row], sims[row * cols + best]};
    out.seed.category = ordered[best].category;
    assigned.push_back(std::move(out));
  }

  auto by_similarity = [](const CategorizedSeed& a, const CategorizedSeed& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.seed.id < b.seed.id;
  };
  std::sort(assigned.begin(), assigned.end(), by_similarity);

  std::vector<CategorizedSeed> kept;
  if (policy.mode == SelectionPolicy::Mode::kThreshold) {
    for (auto& s : assigned) {
      if (s.similarity >= policy.tau) kept.push_back(std::move(s));
    }
  } else {
    std::map<TaskCategory, int> taken;
    for (auto& s : assigned) {
      if (taken[*s.seed.category]++ < policy.k) kept.push_back(std::move(s));
    }
  }
  return kept;
}

}  // namespace reqdrop
