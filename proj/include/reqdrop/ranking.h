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

#ifndef REQDROP_RANKING_H_
#define REQDROP_RANKING_H_

#include <vector>

#include "reqdrop/jsonl.h"

namespace reqdrop {

// ranks[i] is the rank of candidate i; 1 is best. Strict rankings are
// permutations of 1..n.
struct Ranking {
  std::vector<int> ranks;

  size_t size() const { return ranks.size(); }
  bool IsStrictPermutation() const;
  bool operator==(const Ranking&) const = default;
};

Json ToJson(const Ranking& ranking);
// Rejects anything that is not a strict permutation (kValidation).
Ranking RankingFromJson(const Json& record);

}  // namespace reqdrop

#endif  // REQDROP_RANKING_H_
