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

#ifndef REQDROP_SCORERS_H_
#define REQDROP_SCORERS_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "reqdrop/clients.h"
#include "reqdrop/ranking.h"
#include "reqdrop/templates.h"
#include "reqdrop/variation.h"

namespace reqdrop {

class CallCache;
struct RetryPolicy;

enum class ScorerKind { kRemoteScalar, kJudgeLlm, kOracle, kMock };

std::string_view ScorerKindName(ScorerKind kind);
ScorerKind ParseScorerKind(std::string_view name);

struct ScoreRequest {
  std::string query;
  std::vector<std::string> requirements;
  std::string response;

  Json ToJson() const;
};

// A reward backend: (query, requirements, response) -> scalar, higher means
// better adherence. Implementations must be safe to call concurrently.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double ScoreOne(const ScoreRequest& request) = 0;
  // Defaults to one ScoreOne call per response.
  virtual std::vector<double> ScoreGroup(
      const std::string& query, const std::vector<std::string>& requirements,
      const std::vector<std::string>& responses);
  virtual std::string scorer_id() const = 0;
  virtual ScorerKind kind() const = 0;
};

// Checks the preconditions (non-empty query and response), calls the
// backend, and rejects non-finite results with kDomain.
double Score(Scorer& scorer, const ScoreRequest& request);
double Score(Scorer& scorer, const std::string& query,
             const std::vector<Requirement>& requirements,
             const std::string& response);

// Fraction of the requirement texts' checkable constraints satisfied. A
// request without any checkable requirement is a kDomain error.
class OracleScorer : public Scorer {
 public:
  double ScoreOne(const ScoreRequest& request) override;
  std::string scorer_id() const override { return "oracle"; }
  ScorerKind kind() const override { return ScorerKind::kOracle; }
};

// Scripted: a fixed score per exact response text, else a default.
class MockScorer : public Scorer {
 public:
  explicit MockScorer(double default_score,
                      std::map<std::string, double> by_response = {},
                      std::string id = "mock");
  double ScoreOne(const ScoreRequest& request) override;
  std::string scorer_id() const override { return id_; }
  ScorerKind kind() const override { return ScorerKind::kMock; }

 private:
  double default_score_;
  std::map<std::string, double> by_response_;
  std::string id_;
};

// Pointwise LLM judge: renders the template, asks for "Score: <0-10>", and
// maps the last such line onto [0, 1].
std::string JudgePromptRender(const PromptTemplate& tpl,
                              const ScoreRequest& request);
double JudgeParse(std::string_view raw);

class JudgeScorer : public Scorer {
 public:
  JudgeScorer(ChatClient& llm, GenerationOptions options,
              PromptTemplate tpl = BuiltinJudgeTemplate());
  double ScoreOne(const ScoreRequest& request) override;
  // Cites the model and the template digest.
  std::string scorer_id() const override;
  ScorerKind kind() const override { return ScorerKind::kJudgeLlm; }

 private:
  ChatClient& llm_;
  GenerationOptions options_;
  PromptTemplate tpl_;
};

// Client for the RemoteScalar wire protocol (POST /v1/score,
// POST /v1/score_batch, GET /healthz). Throws TransportError on failures.
class RemoteScalarScorer : public Scorer {
 public:
  RemoteScalarScorer(std::string base_url, std::string id,
                     int timeout_seconds = 60);
  double ScoreOne(const ScoreRequest& request) override;
  std::vector<double> ScoreGroup(
      const std::string& query, const std::vector<std::string>& requirements,
      const std::vector<std::string>& responses) override;
  std::string scorer_id() const override { return id_; }
  ScorerKind kind() const override { return ScorerKind::kRemoteScalar; }

  // GET /healthz; returns the parsed body.
  Json Health() const;

 private:
  std::string base_url_;
  std::string id_;
  int timeout_seconds_;
};

// Decorator adding the content-addressed cache and transport retries. Local
// scorers (oracle, mock) report zero latency; remote latency is measured on
// the first call and replayed from the cache afterwards.
class CachedScorer : public Scorer {
 public:
  CachedScorer(Scorer& inner, CallCache& cache, const RetryPolicy& retry);

  struct Result {
    double score;
    int64_t latency_ms;
    std::string request_hash;
  };
  Result ScoreWithMetadata(const ScoreRequest& request);
  std::string RequestHash(const ScoreRequest& request) const;

  double ScoreOne(const ScoreRequest& request) override {
    return ScoreWithMetadata(request).score;
  }
  std::string scorer_id() const override { return inner_.scorer_id(); }
  ScorerKind kind() const override { return inner_.kind(); }
  size_t backend_calls() const { return backend_calls_.load(); }

 private:
  Scorer& inner_;
  CallCache& cache_;
  const RetryPolicy& retry_;
  std::atomic<size_t> backend_calls_{0};
};

enum class TieBreak { kIndexAscending };

// Descending score; equal scores go to the lower candidate index first.
// Non-finite scores are a kDomain error.
Ranking RankFromScores(const std::vector<double>& scores,
                       TieBreak tiebreak = TieBreak::kIndexAscending);

// True when any two scores are exactly equal.
bool HasTies(const std::vector<double>& scores);

struct ScoreRecord {
  std::string item_id;
  int candidate_index = 0;
  double score = 0.0;
  std::string scorer_id;
  int64_t latency_ms = 0;
};

Json ToJson(const ScoreRecord& record);
ScoreRecord ScoreRecordFromJson(const Json& record);

}  // namespace reqdrop

#endif  // REQDROP_SCORERS_H_
