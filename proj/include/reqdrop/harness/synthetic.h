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

#ifndef REQDROP_HARNESS_SYNTHETIC_H_
#define REQDROP_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reqdrop/checkable.h"
#include "reqdrop/corpus.h"

namespace reqdrop::synthetic {

// Default response shape when a requirement is absent from the prompt. The
// synthetic vocabulary is chosen so that every absent requirement is violated
// by the default: 40 words sits outside every synthetic word range, one line
// per paragraph stays below every synthetic line minimum, a single paragraph
// misses every synthetic paragraph count, the filler always contains the
// habit words that forbidden-token constraints target, and required tokens
// never occur in filler.
inline constexpr int kDefaultWords = 40;

const std::vector<std::string>& RequiredTokenPool();
const std::vector<std::string>& HabitWords();

// n compatible constraints with at least two distinct kinds: at most one word
// range, one line minimum, and one paragraph count. Supports 2 <= n <= 12.
std::vector<CheckableConstraint> SyntheticConstraints(uint64_t seed, int n);

// Response satisfying exactly the checkable requirements listed in `prompt`.
std::string TemplateResponse(std::string_view prompt);

// JSON reply {"c1", "t1", ...} for a constraint-generation prompt; the count
// is read from the prompt's key list.
std::string ConstraintReply(std::string_view prompt, uint64_t seed);

struct Corpus {
  std::vector<SeedInstruction> candidates;
  std::vector<Prototype> prototypes;
};

// Category-flavoured seed questions and prototypes for offline runs. Texts
// are distinct within a category; at most 90 per category.
Corpus MakeCorpus(int candidates_per_category, int prototypes_per_category,
                  uint64_t seed);

}  // namespace reqdrop::synthetic

#endif  // REQDROP_HARNESS_SYNTHETIC_H_
