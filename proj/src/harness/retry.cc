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

#include "reqdrop/harness/retry.h"

#include <cmath>

#include "reqdrop/rng.h"

namespace reqdrop {

std::chrono::milliseconds RetryPolicy::Backoff(int attempt,
                                               const std::string& key) const {
  double delay = static_cast<double>(base_backoff_ms) *
                 std::ldexp(1.0, std::min(attempt, 16));
  if (jitter) {
    Rng rng(DeriveSeed(MixSeed(seed, static_cast<uint64_t>(attempt)), key));
    delay *= 0.5 + rng.Uniform01();
  }
  return std::chrono::milliseconds(static_cast<int64_t>(delay));
}

}  // namespace reqdrop
