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

#include "reqdrop/harness/reward_service.h"

#include <cmath>

#include "httplib.h"
#include "reqdrop/error.h"
#include "reqdrop/harness/log.h"

namespace reqdrop {
namespace {

HttpReply BadRequest(const std::string& message) {
  return {400, {{"error", message}}};
}

bool IsStringArray(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (!e.is_string()) return false;
  }
  return true;
}

}  // namespace

std::vector<double> GroupAdvantages(const std::vector<double>& rewards,
                                    double eps, StdMode mode) {
  Require(!rewards.empty(), "advantages of an empty group");
  Require(eps >= 0.0, "eps must be non-negative");
  const size_t n = rewards.size();
  double mean = 0.0;
  for (double r : rewards) {
    if (!std::isfinite(r)) Fail(ErrorKind::kDomain, "non-finite reward");
    mean += r;
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double r : rewards) ss += (r - mean) * (r - mean);
  double std = 0.0;
  if (mode == StdMode::kPopulation) {
    std = std::sqrt(ss / static_cast<double>(n));
  } else if (n > 1) {
    std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  std::vector<double> out(n, 0.0);
  const double denom = std + eps;
  if (denom == 0.0) return out;
  for (size_t i = 0; i < n; ++i) out[i] = (rewards[i] - mean) / denom;
  return out;
}

RewardService::RewardService(Scorer& scorer, RewardServiceOptions options)
    : scorer_(scorer), options_(options) {
  server().Post("/v1/rewards", [this](const httplib::Request& req,
                                      httplib::Response& res) {
    StdMode mode = StdMode::kPopulation;
    if (req.has_param("std")) {
      const std::string value = req.get_param_value("std");
      if (value == "sample") {
        mode = StdMode::kSample;
      } else if (value != "population") {
        res.status = 400;
        res.set_content(Json{{"error", "std must be population or sample"}}.dump(),
                        "application/json");
        return;
      }
    }
    const HttpReply reply = HandleRewards(req.body, mode);
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
  });
  server().Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(
        Json{{"status", "ok"}, {"scorer_id", scorer_.scorer_id()}}.dump(),
        "application/json");
  });
}

HttpReply RewardService::HandleRewards(const std::string& body, StdMode mode) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return BadRequest(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) return BadRequest("body must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "query" && key != "requirements" && key != "rollouts" &&
        key != "return_advantages") {
      return BadRequest("unexpected field '" + key + "'");
    }
  }
  if (!doc.contains("query") || !doc["query"].is_string()) {
    return BadRequest("'query' must be a string");
  }
  if (!doc.contains("requirements") || !IsStringArray(doc["requirements"])) {
    return BadRequest("'requirements' must be an array of strings");
  }
  if (!doc.contains("rollouts") || !IsStringArray(doc["rollouts"]) ||
      doc["rollouts"].empty()) {
    return BadRequest("'rollouts' must be a non-empty array of strings");
  }
  if (doc["rollouts"].size() > options_.max_rollouts) {
    return {413, {{"error", "too many rollouts"}}};
  }
  bool want_advantages = false;
  if (doc.contains("return_advantages")) {
    if (!doc["return_advantages"].is_boolean()) {
      return BadRequest("'return_advantages' must be a boolean");
    }
    want_advantages = doc["return_advantages"].get<bool>();
  }

  const auto query = doc["query"].get<std::string>();
  const auto requirements = doc["requirements"].get<std::vector<std::string>>();
  const auto rollouts = doc["rollouts"].get<std::vector<std::string>>();
  std::vector<double> rewards;
  try {
    for (const auto& rollout : rollouts) {
      rewards.push_back(Score(scorer_, ScoreRequest{query, requirements, rollout}));
    }
  } catch (const TransportError& e) {
    log::Warning("reward_transport", {{"error", e.what()},
                                      {"request_hash", e.request_hash()}});
    return {502, {{"error", e.what()}, {"request_hash", e.request_hash()}}};
  } catch (const Error& e) {
    const bool client = e.kind() == ErrorKind::kPrecondition ||
                        e.kind() == ErrorKind::kParse ||
                        e.kind() == ErrorKind::kValidation;
    return {client ? 400 : 500,
            {{"error", e.what()}, {"kind", ErrorKindName(e.kind())}}};
  }
  Json reply = {{"rewards", rewards}};
  if (want_advantages) {
    reply["advantages"] = GroupAdvantages(rewards, options_.eps, mode);
  }
  return {200, reply};
}

}  // namespace reqdrop
