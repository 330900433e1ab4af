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

#ifndef REQDROP_HARNESS_RETRY_H_
#define REQDROP_HARNESS_RETRY_H_

#include <chrono>
#include <cstdint>
#include <string>

namespace reqdrop {

struct RetryPolicy {
  int max_attempts = 3;
  int64_t base_backoff_ms = 200;
  bool jitter = true;
  uint64_t seed = 0;

  // Delay before attempt `attempt + 1` (attempt is 0-based). Exponential in
  // the attempt; jitter is a deterministic factor in [0.5, 1.5) derived from
  // the seed and the request key.
  std::chrono::milliseconds Backoff(int attempt, const std::string& key) const;
};

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_RETRY_H_
