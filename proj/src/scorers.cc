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

#include "reqdrop/scorers.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <regex>
#include <set>
#include <thread>

#include "reqdrop/checkable.h"
#include "reqdrop/error.h"
#include "reqdrop/harness/cache.h"
#include "reqdrop/harness/http.h"
#include "reqdrop/harness/log.h"
#include "reqdrop/harness/retry.h"

namespace reqdrop {

std::string_view ScorerKindName(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kRemoteScalar: return "remote";
    case ScorerKind::kJudgeLlm: return "judge";
    case ScorerKind::kOracle: return "oracle";
    case ScorerKind::kMock: return "mock";
  }
  return "";
}

ScorerKind ParseScorerKind(std::string_view name) {
  for (auto kind : {ScorerKind::kRemoteScalar, ScorerKind::kJudgeLlm,
                    ScorerKind::kOracle, ScorerKind::kMock}) {
    if (ScorerKindName(kind) == name) return kind;
  }
  Fail(ErrorKind::kConfig, "unknown scorer kind '" + std::string(name) + "'");
}

Json ScoreRequest::ToJson() const {
  return {{"query", query}, {"requirements", requirements}, {"response", response}};
}

std::vector<double> Scorer::ScoreGroup(
    const std::string& query, const std::vector<std::string>& requirements,
    const std::vector<std::string>& responses) {
  std::vector<double> out;
  out.reserve(responses.size());
  for (const auto& response : responses) {
    out.push_back(ScoreOne({query, requirements, response}));
  }
  return out;
}

double Score(Scorer& scorer, const ScoreRequest& request) {
  Require(!request.query.empty(), "score needs a non-empty query");
  Require(!request.response.empty(), "score needs a non-empty response");
  const double value = scorer.ScoreOne(request);
  if (!std::isfinite(value)) {
    Fail(ErrorKind::kDomain, "scorer '" + scorer.scorer_id() +
                                 "' returned a non-finite score");
  }
  return value;
}

double Score(Scorer& scorer, const std::string& query,
             const std::vector<Requirement>& requirements,
             const std::string& response) {
  ScoreRequest request{query, {}, response};
  for (const auto& r : requirements) request.requirements.push_back(r.text);
  return Score(scorer, request);
}

double OracleScorer::ScoreOne(const ScoreRequest& request) {
  const auto constraints = CheckableSubset(request.requirements);
  if (constraints.empty()) {
    Fail(ErrorKind::kDomain, "oracle scorer: no checkable requirements");
  }
  return OracleScore(constraints, request.response);
}

MockScorer::MockScorer(double default_score,
                       std::map<std::string, double> by_response,
                       std::string id)
    : default_score_(default_score),
      by_response_(std::move(by_response)),
      id_(std::move(id)) {}

double MockScorer::ScoreOne(const ScoreRequest& request) {
  auto it = by_response_.find(request.response);
  return it == by_response_.end() ? default_score_ : it->second;
}

std::string JudgePromptRender(const PromptTemplate& tpl,
                              const ScoreRequest& request) {
  std::string requirements;
  for (size_t i = 0; i < request.requirements.size(); ++i) {
    if (i > 0) requirements += '\n';
    requirements += std::to_string(i + 1) + ". " + request.requirements[i];
  }
  if (requirements.empty()) requirements = "(none stated)";
  return Substitute(tpl.text, {{"query", request.query},
                               {"requirements", requirements},
                               {"response", request.response}});
}

double JudgeParse(std::string_view raw) {
  static const std::regex kScoreLine(R"re(Score:\s*([+-]?\d+(?:\.\d+)?))re");
  const std::string s(raw);
  std::string last;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kScoreLine);
       it != std::sregex_iterator(); ++it) {
    last = (*it)[1];
  }
  if (last.empty()) Fail(ErrorKind::kParse, "judge reply has no score line");
  const double value = std::stod(last);
  if (value < 0.0 || value > 10.0) {
    Fail(ErrorKind::kParse, "judge score " + last + " is outside 0-10");
  }
  return value / 10.0;
}

JudgeScorer::JudgeScorer(ChatClient& llm, GenerationOptions options,
                         PromptTemplate tpl)
    : llm_(llm), options_(std::move(options)), tpl_(std::move(tpl)) {}

std::string JudgeScorer::scorer_id() const {
  return "judge:" + options_.model + ":" + tpl_.name + "@" + tpl_.Digest();
}

double JudgeScorer::ScoreOne(const ScoreRequest& request) {
  ChatRequest chat;
  chat.model = options_.model;
  chat.temperature = options_.temperature;
  chat.max_tokens = options_.max_tokens;
  chat.messages.push_back({"user", JudgePromptRender(tpl_, request)});
  std::string last_error;
  const int attempts = std::max(1, options_.max_attempts);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::string raw = llm_.Complete(chat);
    try {
      return JudgeParse(raw);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kParse) throw;
      last_error = e.what();
      chat.messages.push_back({"assistant", raw});
      chat.messages.push_back(
          {"user", "End your reply with a final line \"Score: <0-10>\"."});
    }
  }
  Fail(ErrorKind::kParse, "judge output unparseable after " +
                              std::to_string(attempts) + " attempts: " +
                              last_error);
}

RemoteScalarScorer::RemoteScalarScorer(std::string base_url, std::string id,
                                       int timeout_seconds)
    : base_url_(std::move(base_url)),
      id_(std::move(id)),
      timeout_seconds_(timeout_seconds) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

double RemoteScalarScorer::ScoreOne(const ScoreRequest& request) {
  const Json body =
      http::PostJson(base_url_ + "/v1/score", request.ToJson(), {},
                     timeout_seconds_);
  if (!body.contains("score") || !body["score"].is_number()) {
    throw TransportError("remote scorer reply lacks a numeric 'score'", "");
  }
  return body["score"].get<double>();
}

std::vector<double> RemoteScalarScorer::ScoreGroup(
    const std::string& query, const std::vector<std::string>& requirements,
    const std::vector<std::string>& responses) {
  const Json request = {{"query", query},
                        {"requirements", requirements},
                        {"responses", responses}};
  const Json body = http::PostJson(base_url_ + "/v1/score_batch", request, {},
                                   timeout_seconds_);
  if (!body.contains("scores") || !body["scores"].is_array() ||
      body["scores"].size() != responses.size()) {
    throw TransportError("remote scorer batch reply has the wrong shape", "");
  }
  std::vector<double> out;
  for (const auto& v : body["scores"]) {
    if (!v.is_number()) {
      throw TransportError("remote scorer batch reply has a non-number", "");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Json RemoteScalarScorer::Health() const {
  return http::GetJson(base_url_ + "/healthz", timeout_seconds_);
}

CachedScorer::CachedScorer(Scorer& inner, CallCache& cache,
                           const RetryPolicy& retry)
    : inner_(inner), cache_(cache), retry_(retry) {}

std::string CachedScorer::RequestHash(const ScoreRequest& request) const {
  return CacheKey({{"kind", "score"},
                   {"scorer", inner_.scorer_id()},
                   {"request", request.ToJson()}});
}

CachedScorer::Result CachedScorer::ScoreWithMetadata(
    const ScoreRequest& request) {
  const std::string key = RequestHash(request);
  if (auto hit = cache_.Get(key)) {
    return {hit->value.get<double>(), hit->latency_ms, key};
  }
  const bool local =
      inner_.kind() == ScorerKind::kOracle || inner_.kind() == ScorerKind::kMock;
  const int attempts = std::max(1, retry_.max_attempts);
  for (int attempt = 0;; ++attempt) {
    const auto start = std::chrono::steady_clock::now();
    try {
      ++backend_calls_;
      const double value = Score(inner_, request);
      const int64_t latency =
          local ? 0
                : std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      cache_.Put({key, value, "", inner_.scorer_id(), latency});
      log::Debug("score", {{"request_hash", key},
                           {"scorer", inner_.scorer_id()},
                           {"latency_ms", latency}});
      return {value, latency, key};
    } catch (const TransportError& e) {
      log::Warning("score_retry", {{"request_hash", key},
                                   {"attempt", attempt + 1},
                                   {"error", e.what()}});
      if (attempt + 1 >= attempts) {
        throw TransportError(std::string(e.what()) + " [request " + key + "]",
                             key);
      }
      std::this_thread::sleep_for(retry_.Backoff(attempt, key));
    }
  }
}

Ranking RankFromScores(const std::vector<double>& scores, TieBreak) {
  Require(!scores.empty(), "rank_from_scores needs at least one score");
  for (double s : scores) {
    if (!std::isfinite(s)) Fail(ErrorKind::kDomain, "non-finite score");
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  Ranking ranking{std::vector<int>(scores.size())};
  for (size_t position = 0; position < order.size(); ++position) {
    ranking.ranks[order[position]] = static_cast<int>(position) + 1;
  }
  return ranking;
}

bool HasTies(const std::vector<double>& scores) {
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

Json ToJson(const ScoreRecord& record) {
  return {{"item_id", record.item_id},
          {"candidate_index", record.candidate_index},
          {"score", record.score},
          {"scorer_id", record.scorer_id},
          {"latency_ms", record.latency_ms}};
}

ScoreRecord ScoreRecordFromJson(const Json& record) {
  ScoreRecord out;
  out.item_id = record.at("item_id").get<std::string>();
  out.candidate_index = record.at("candidate_index").get<int>();
  out.score = record.at("score").get<double>();
  out.scorer_id = record.at("scorer_id").get<std::string>();
  out.latency_ms = record.value("latency_ms", int64_t{0});
  if (!std::isfinite(out.score)) Fail(ErrorKind::kValidation, "non-finite score");
  if (out.latency_ms < 0) Fail(ErrorKind::kValidation, "negative latency");
  return out;
}

}  // namespace reqdrop
