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

#ifndef REQDROP_HARNESS_MOCK_SCORE_SERVER_H_
#define REQDROP_HARNESS_MOCK_SCORE_SERVER_H_

#include <string>

#include "reqdrop/harness/server.h"

namespace reqdrop {

struct MockScoreOptions {
  enum class Mode { kOracle, kConstant };
  Mode mode = Mode::kOracle;
  double constant = 0.5;
  size_t max_batch_size = 16;
};

// Reference RemoteScalar server:
//   POST /v1/score {"query", "requirements", "response"} -> {"score"}
//   POST /v1/score_batch {"query", "requirements", "responses"} -> {"scores"}
//   GET /healthz -> {"status": "ok", "max_batch_size", "scorer_id"}
// Oracle mode scores the checkable requirements; the rest are ignored and an
// empty checkable set scores 0. Oversized batches get 413.
class MockScoreServer : public HttpService {
 public:
  explicit MockScoreServer(MockScoreOptions options = {});

  HttpReply HandleScore(const std::string& body) const;
  HttpReply HandleBatch(const std::string& body) const;
  Json Health() const;
  std::string scorer_id() const;

 private:
  double ScoreText(const std::vector<std::string>& requirements,
                   const std::string& response) const;

  MockScoreOptions options_;
};

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_MOCK_SCORE_SERVER_H_
