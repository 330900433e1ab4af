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

#ifndef REQDROP_HARNESS_REWARD_SERVICE_H_
#define REQDROP_HARNESS_REWARD_SERVICE_H_

#include <string>
#include <vector>

#include "reqdrop/harness/server.h"
#include "reqdrop/scorers.h"

namespace reqdrop {

enum class StdMode { kPopulation, kSample };

// (r_i - mean) / (std + eps). A single-rollout group has advantage 0 under
// either convention.
std::vector<double> GroupAdvantages(const std::vector<double>& rewards,
                                    double eps = 1e-6,
                                    StdMode mode = StdMode::kPopulation);

struct RewardServiceOptions {
  double eps = 1e-6;
  size_t max_rollouts = 4096;
};

// POST /v1/rewards {"query", "requirements", "rollouts", "return_advantages"}
//   -> {"rewards": [...], "advantages": [...]}; "?std=sample" switches the
//   advantage convention.
// GET /healthz -> {"status": "ok", "scorer_id": ...}
// Scoring is delegated to a thread-safe scorer; handlers share nothing else.
class RewardService : public HttpService {
 public:
  explicit RewardService(Scorer& scorer, RewardServiceOptions options = {});

  // The transport-free core of POST /v1/rewards.
  HttpReply HandleRewards(const std::string& body, StdMode mode);

 private:
  Scorer& scorer_;
  RewardServiceOptions options_;
};

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_REWARD_SERVICE_H_
