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

#ifndef REQDROP_DROPOUT_H_
#define REQDROP_DROPOUT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqdrop/clients.h"
#include "reqdrop/ranking.h"
#include "reqdrop/variation.h"

namespace reqdrop {

enum class DropoutMode { kNested, kIndependent };

std::string_view DropoutModeName(DropoutMode mode);
DropoutMode ParseDropoutMode(std::string_view name);

// sets[k] holds the 1-based requirement indices dropped in round k+1 and has
// exactly k elements. Sets are stored sorted.
struct DropoutPlan {
  DropoutMode mode = DropoutMode::kNested;
  uint64_t rng_seed = 0;
  std::vector<std::vector<int>> sets;
  // Nested mode only: the order in which requirements are eliminated.
  std::vector<int> elimination_order;

  int n() const { return static_cast<int>(sets.size()); }
};

// Nested: a uniform random elimination order, taking prefixes. Independent:
// each size-k subset drawn uniformly and independently.
DropoutPlan MakePlan(int n, DropoutMode mode, uint64_t rng_seed);

// Nested plan from an explicit elimination order of n-1 distinct indices.
DropoutPlan PlanFromEliminationOrder(int n, const std::vector<int>& order);

Json ToJson(const DropoutPlan& plan);
DropoutPlan DropoutPlanFromJson(const Json& record);

struct CandidateResponse {
  std::string text;
  std::vector<int> dropped;  // sorted
  int round = 1;
  std::string generator;
};

struct EvalItem {
  std::string item_id;
  AugmentedQuery query;
  DropoutPlan plan;
  std::vector<CandidateResponse> candidates;
  Ranking golden;
};

Json ToJson(const EvalItem& item);
// Validates the item invariants (drop sizes, golden consistency).
EvalItem EvalItemFromJson(const Json& record);

// The query with `dropped` requirements removed and the rest renumbered.
std::string ComposeWithDropped(const AugmentedQuery& query,
                               const std::vector<int>& dropped);

// The chat request issued for one round of one query.
ChatRequest CandidateRequest(const AugmentedQuery& query,
                             const DropoutPlan& plan, int round,
                             const GenerationOptions& options);

// One response per round, returned in round order. Transport failures are
// rethrown with the (item, round) coordinate in the message.
std::vector<CandidateResponse> GenerateCandidates(
    const AugmentedQuery& query, const DropoutPlan& plan, ChatClient& llm,
    const GenerationOptions& options, int max_in_flight = 1);

// rank = |dropped| + 1. Duplicate or out-of-range sizes are kIntegrity.
Ranking GoldenRanking(const std::vector<CandidateResponse>& candidates);

// Builds the item; when `shuffle_seed` is set the candidate order is a seeded
// permutation so that list position carries no information about rank.
EvalItem AssembleItem(const AugmentedQuery& query, const DropoutPlan& plan,
                      std::vector<CandidateResponse> candidates,
                      std::optional<uint64_t> shuffle_seed);

}  // namespace reqdrop

#endif  // REQDROP_DROPOUT_H_
