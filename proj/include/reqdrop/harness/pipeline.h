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

#ifndef REQDROP_HARNESS_PIPELINE_H_
#define REQDROP_HARNESS_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reqdrop/bt.h"
#include "reqdrop/clients.h"
#include "reqdrop/corpus.h"
#include "reqdrop/dropout.h"
#include "reqdrop/harness/backends.h"
#include "reqdrop/harness/cache.h"
#include "reqdrop/harness/config.h"
#include "reqdrop/jsonl.h"
#include "reqdrop/kernels.h"
#include "reqdrop/metrics.h"
#include "reqdrop/scorers.h"
#include "reqdrop/templates.h"
#include "reqdrop/variation.h"

namespace reqdrop {

// Clients described by a RunConfig, each wrapped in the shared call cache.
// Construction is lazy so a stage only needs the backends it touches.
class Backends {
 public:
  explicit Backends(const RunConfig& config);
  ~Backends();

  CachedChatClient& generation();
  CachedChatClient& augmentation();
  CachedEmbeddingClient& embedding();
  CachedScorer& scorer();
  CallCache& cache() { return cache_; }

  GenerationOptions generation_options() const;
  GenerationOptions augmentation_options() const;

  size_t backend_calls() const;

 private:
  std::unique_ptr<ChatClient> MakeChat(const BackendConfig& b) const;

  const RunConfig& config_;
  CallCache cache_;
  std::unique_ptr<ChatClient> generation_raw_;
  std::unique_ptr<CachedChatClient> generation_;
  std::unique_ptr<ChatClient> augmentation_raw_;
  std::unique_ptr<CachedChatClient> augmentation_;
  std::unique_ptr<EmbeddingClient> embedding_raw_;
  std::unique_ptr<CachedEmbeddingClient> embedding_;
  std::unique_ptr<ChatClient> judge_raw_;
  std::unique_ptr<CachedChatClient> judge_;
  std::unique_ptr<Scorer> scorer_raw_;
  std::unique_ptr<CachedScorer> scorer_;
};

// Builds the uncached scorer a config names; `judge` backs kind "judge".
std::unique_ptr<Scorer> MakeScorer(const BackendConfig& b, ChatClient* judge,
                                   const GenerationOptions& judge_options,
                                   const PromptTemplate& judge_template);

PromptTemplate ConstraintTemplateOf(const RunConfig& config);
PromptTemplate JudgeTemplateOf(const RunConfig& config);

// In-memory stages.

std::vector<CategorizedSeed> SelectSeeds(
    const std::vector<SeedInstruction>& candidates,
    const std::vector<Prototype>& prototypes, EmbeddingClient& embedder,
    const SelectionPolicy& policy);

// Seeds whose generation or validation fails are logged and skipped; an
// empty result is a generation error.
std::vector<AugmentedQuery> AugmentSeeds(const std::vector<SeedInstruction>& seeds,
                                         ChatClient& llm, const RunConfig& config,
                                         const GenerationOptions& options);

DropoutPlan PlanFor(const AugmentedQuery& query, const RunConfig& config);

// Generation fans out over every (item, round) pair under the concurrency
// limit. The first failing pair in task order is the one reported.
std::vector<EvalItem> BuildDataset(const std::vector<AugmentedQuery>& queries,
                                   ChatClient& llm, const RunConfig& config,
                                   const GenerationOptions& options);

ScoreRequest ScoreRequestFor(const EvalItem& item, size_t candidate);

std::vector<ScoreRecord> ScoreDataset(const std::vector<EvalItem>& items,
                                      CachedScorer& scorer, int concurrency);

struct Evaluation {
  EvalSummary summary;
  std::vector<MetricTriple> per_item;
};

// Scores must cover every candidate of every item exactly once, under one
// scorer id.
Evaluation EvaluateScores(const std::vector<EvalItem>& items,
                          const std::vector<ScoreRecord>& scores,
                          Exec exec = Exec::kParallel);

std::vector<ScoreRecord> ReadScores(const std::string& path);
std::vector<EvalItem> ReadDataset(const std::string& path);
std::vector<AugmentedQuery> ReadQueries(const std::string& path);
std::vector<PreferencePair> ReadPairs(const std::string& path);
Json ToJson(const Prototype& prototype);

// File stages. Each validates its records before writing and returns a
// one-object summary for stdout. With `dry_run` nothing is written and no
// backend is called; the summary counts the requests that would be issued
// and how many are already cached.
struct StageContext {
  RunConfig config;
  bool dry_run = false;
};

Json RunSynthSeeds(const StageContext& ctx, int per_category,
                   int prototypes_per_category, const std::string& candidates_out,
                   const std::string& prototypes_out);
Json RunBuildSeeds(const StageContext& ctx, const std::string& candidates_path,
                   const std::string& prototypes_path, const std::string& out);
Json RunAugment(const StageContext& ctx, const std::string& seeds_path,
                const std::string& out);
Json RunGenCandidates(const StageContext& ctx, const std::string& queries_path,
                      const std::string& out);
Json RunEvalRm(const StageContext& ctx, const std::string& dataset_path,
               const std::string& out);
Json RunExportBt(const StageContext& ctx, const std::string& dataset_path,
                 const std::string& out);
Json RunTrainToyBt(const StageContext& ctx, const std::string& pairs_path,
                   const std::string& out,
                   const std::string& eval_dataset_path = "");
Json RunReport(const StageContext& ctx, const std::string& dataset_path,
               const std::vector<std::string>& score_paths,
               const std::string& out, const std::string& table_out = "");

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_PIPELINE_H_
