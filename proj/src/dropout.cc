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

#include "reqdrop/dropout.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "reqdrop/error.h"
#include "reqdrop/harness/concurrency.h"
#include "reqdrop/rng.h"

namespace reqdrop {

std::string_view DropoutModeName(DropoutMode mode) {
  return mode == DropoutMode::kNested ? "nested" : "independent";
}

DropoutMode ParseDropoutMode(std::string_view name) {
  if (name == "nested") return DropoutMode::kNested;
  if (name == "independent") return DropoutMode::kIndependent;
  Fail(ErrorKind::kConfig, "unknown dropout mode '" + std::string(name) + "'");
}

DropoutPlan PlanFromEliminationOrder(int n, const std::vector<int>& order) {
  Require(n >= 2, "dropout plan needs n >= 2");
  Require(static_cast<int>(order.size()) == n - 1,
          "elimination order must have n-1 entries");
  std::set<int> distinct(order.begin(), order.end());
  Require(static_cast<int>(distinct.size()) == n - 1 && *distinct.begin() >= 1 &&
              *distinct.rbegin() <= n,
          "elimination order must be distinct indices in 1..n");
  DropoutPlan plan;
  plan.mode = DropoutMode::kNested;
  plan.elimination_order = order;
  for (int k = 0; k < n; ++k) {
    std::vector<int> set(order.begin(), order.begin() + k);
    std::sort(set.begin(), set.end());
    plan.sets.push_back(std::move(set));
  }
  return plan;
}

DropoutPlan MakePlan(int n, DropoutMode mode, uint64_t rng_seed) {
  Require(n >= 2, "dropout plan needs n >= 2");
  Rng rng(rng_seed);
  DropoutPlan plan;
  if (mode == DropoutMode::kNested) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    rng.Shuffle(order);
    order.pop_back();
    plan = PlanFromEliminationOrder(n, order);
  } else {
    plan.mode = DropoutMode::kIndependent;
    for (int k = 0; k < n; ++k) {
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 1);
      // Partial Fisher-Yates: the first k slots become a uniform k-subset.
      for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.UniformIndex(n - i));
        std::swap(pool[i], pool[j]);
      }
      std::vector<int> set(pool.begin(), pool.begin() + k);
      std::sort(set.begin(), set.end());
      plan.sets.push_back(std::move(set));
    }
  }
  plan.rng_seed = rng_seed;
  return plan;
}

Json ToJson(const DropoutPlan& plan) {
  Json out = {{"mode", DropoutModeName(plan.mode)},
              {"rng_seed", plan.rng_seed},
              {"sets", plan.sets}};
  if (!plan.elimination_order.empty()) {
    out["elimination_order"] = plan.elimination_order;
  }
  return out;
}

DropoutPlan DropoutPlanFromJson(const Json& record) {
  DropoutPlan plan;
  plan.mode = ParseDropoutMode(record.at("mode").get<std::string>());
  plan.rng_seed = record.at("rng_seed").get<uint64_t>();
  plan.sets = record.at("sets").get<std::vector<std::vector<int>>>();
  plan.elimination_order =
      record.value("elimination_order", std::vector<int>{});
  for (size_t k = 0; k < plan.sets.size(); ++k) {
    if (plan.sets[k].size() != k) {
      Fail(ErrorKind::kValidation, "plan set " + std::to_string(k + 1) +
                                       " has the wrong cardinality");
    }
    if (plan.mode == DropoutMode::kNested && k > 0 &&
        !std::includes(plan.sets[k].begin(), plan.sets[k].end(),
                       plan.sets[k - 1].begin(), plan.sets[k - 1].end())) {
      Fail(ErrorKind::kValidation, "nested plan sets are not a chain");
    }
  }
  return plan;
}

Json ToJson(const EvalItem& item) {
  Json candidates = Json::array();
  for (const auto& c : item.candidates) {
    candidates.push_back({{"text", c.text},
                          {"dropped", c.dropped},
                          {"round", c.round},
                          {"generator", c.generator}});
  }
  return {{"item_id", item.item_id},
          {"query", ToJson(item.query)},
          {"plan", ToJson(item.plan)},
          {"candidates", candidates},
          {"golden", ToJson(item.golden)}};
}

EvalItem EvalItemFromJson(const Json& record) {
  EvalItem item;
  item.item_id = record.at("item_id").get<std::string>();
  item.query = AugmentedQueryFromJson(record.at("query"));
  item.plan = DropoutPlanFromJson(record.at("plan"));
  for (const auto& c : record.at("candidates")) {
    CandidateResponse candidate;
    candidate.text = c.at("text").get<std::string>();
    candidate.dropped = c.at("dropped").get<std::vector<int>>();
    candidate.round = c.at("round").get<int>();
    candidate.generator = c.value("generator", "");
    if (static_cast<int>(candidate.dropped.size()) != candidate.round - 1) {
      Fail(ErrorKind::kValidation, "item '" + item.item_id +
                                       "': candidate drop count != round-1");
    }
    item.candidates.push_back(std::move(candidate));
  }
  item.golden = RankingFromJson(record.at("golden"));
  const size_t n = item.query.requirements.size();
  if (item.candidates.size() != n || static_cast<size_t>(item.plan.n()) != n) {
    Fail(ErrorKind::kValidation, "item '" + item.item_id +
                                     "': candidate/plan/requirement counts differ");
  }
  if (GoldenRanking(item.candidates) != item.golden) {
    Fail(ErrorKind::kValidation,
         "item '" + item.item_id + "': golden ranking does not follow drop counts");
  }
  return item;
}

std::string ComposeWithDropped(const AugmentedQuery& query,
                               const std::vector<int>& dropped) {
  const std::set<int> removed(dropped.begin(), dropped.end());
  std::vector<std::string> kept;
  for (const auto& r : query.requirements) {
    if (!removed.count(r.index)) kept.push_back(r.text);
  }
  return ComposeText(query.seed.text, kept);
}

ChatRequest CandidateRequest(const AugmentedQuery& query,
                             const DropoutPlan& plan, int round,
                             const GenerationOptions& options) {
  Require(round >= 1 && round <= plan.n(), "round out of range");
  ChatRequest request;
  request.model = options.model;
  request.temperature = options.temperature;
  request.max_tokens = options.max_tokens;
  request.messages.push_back(
      {"user", ComposeWithDropped(query, plan.sets[round - 1])});
  return request;
}

std::vector<CandidateResponse> GenerateCandidates(
    const AugmentedQuery& query, const DropoutPlan& plan, ChatClient& llm,
    const GenerationOptions& options, int max_in_flight) {
  Require(static_cast<size_t>(plan.n()) == query.requirements.size(),
          "plan size does not match the requirement count");
  std::vector<CandidateResponse> out(plan.n());
  BoundedParallelFor(out.size(), max_in_flight, [&](size_t i) {
    const int round = static_cast<int>(i) + 1;
    const ChatRequest request = CandidateRequest(query, plan, round, options);
    try {
      out[i] = {llm.Complete(request), plan.sets[i], round, options.model};
    } catch (const TransportError& e) {
      throw TransportError("item '" + query.seed.id + "' round " +
                               std::to_string(round) + ": " + e.what(),
                           e.request_hash());
    }
  });
  return out;
}

Ranking GoldenRanking(const std::vector<CandidateResponse>& candidates) {
  const size_t n = candidates.size();
  Require(n >= 1, "golden ranking of zero candidates");
  std::vector<bool> seen(n, false);
  Ranking ranking;
  for (const auto& c : candidates) {
    const size_t size = c.dropped.size();
    if (size >= n || seen[size]) {
      Fail(ErrorKind::kIntegrity,
           "dropped-set sizes are not a permutation of 0..n-1");
    }
    seen[size] = true;
    ranking.ranks.push_back(static_cast<int>(size) + 1);
  }
  return ranking;
}

EvalItem AssembleItem(const AugmentedQuery& query, const DropoutPlan& plan,
                      std::vector<CandidateResponse> candidates,
                      std::optional<uint64_t> shuffle_seed) {
  if (shuffle_seed) {
    Rng rng(*shuffle_seed);
    rng.Shuffle(candidates);
  }
  EvalItem item;
  item.item_id = query.seed.id;
  item.query = query;
  item.plan = plan;
  item.golden = GoldenRanking(candidates);
  item.candidates = std::move(candidates);
  return item;
}

}  // namespace reqdrop
