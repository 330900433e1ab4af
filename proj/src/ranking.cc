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

#include "reqdrop/ranking.h"

#include "reqdrop/error.h"

namespace reqdrop {

bool Ranking::IsStrictPermutation() const {
  std::vector<bool> seen(ranks.size() + 1, false);
  for (int r : ranks) {
    if (r < 1 || r > static_cast<int>(ranks.size()) || seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

Json ToJson(const Ranking& ranking) { return ranking.ranks; }

Ranking RankingFromJson(const Json& record) {
  Ranking ranking{record.get<std::vector<int>>()};
  if (!ranking.IsStrictPermutation()) {
    Fail(ErrorKind::kValidation, "ranking is not a permutation of 1..n");
  }
  return ranking;
}

}  // namespace reqdrop
