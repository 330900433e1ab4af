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

#ifndef REQDROP_VARIATION_H_
#define REQDROP_VARIATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqdrop/clients.h"
#include "reqdrop/corpus.h"
#include "reqdrop/templates.h"

namespace reqdrop {

enum class RequirementKind { kContent, kStyle, kFormat, kLength };

std::string_view RequirementKindName(RequirementKind kind);
// Exact canonical name ("Content", ...); used for artifact files.
RequirementKind ParseRequirementKind(std::string_view name);

// Maps a free-form type label from a generator onto one of the four kinds.
// Case-insensitive; accepts the canonical names, "<kind> constraint(s)",
// adjectival forms, the reference sub-type headings of the constraint prompt
// (e.g. "Word Limit", "Tone", "Required Entities"), and otherwise a label
// that mentions exactly one kind word.
std::optional<RequirementKind> NormalizeKindLabel(std::string_view label);

struct Requirement {
  int index = 0;  // 1-based position within its query
  RequirementKind kind = RequirementKind::kContent;
  std::string text;
  std::string raw_kind;  // the generator's label, kept as metadata
};

struct AugmentedQuery {
  SeedInstruction seed;
  std::vector<Requirement> requirements;
  std::string composed_text;
};

Json ToJson(const AugmentedQuery& query);
AugmentedQuery AugmentedQueryFromJson(const Json& record);

struct ParsedConstraint {
  std::string text;
  RequirementKind kind;
  std::string raw_kind;
};

// Finds the first balanced JSON object in `raw`, skipping prose and code
// fences around it.
std::optional<Json> ExtractFirstJsonObject(std::string_view raw);

// Requires exactly the keys c1, t1, ..., cN, tN. Errors are kParse and name
// the offending field.
std::vector<ParsedConstraint> ParseConstraintJson(std::string_view raw,
                                                  int count = 5);

// Inverse of ParseConstraintJson (uses raw_kind when present).
std::string SerializeConstraintJson(
    const std::vector<ParsedConstraint>& constraints);

// Structural checks only: at least two distinct kinds, non-empty texts,
// pairwise distinct texts, unique indices. Returns the violations found.
std::vector<std::string> ValidateRequirements(
    const std::vector<Requirement>& requirements);

// seed text + separator + numbered requirement lines; byte-deterministic.
std::string ComposeText(const std::string& seed_text,
                        const std::vector<std::string>& requirement_texts);

// Inverse of ComposeText: the requirement texts listed after the separator
// (empty when the text has no requirement block).
std::vector<std::string> RequirementLinesOf(std::string_view composed_text);

AugmentedQuery ComposeQuery(const SeedInstruction& seed,
                            const std::vector<Requirement>& requirements);

// Renders the constraint-generation prompt. count == 5 reproduces the
// template verbatim; other counts rewrite the count words and key list.
std::string RenderConstraintPrompt(const PromptTemplate& tpl,
                                   const std::string& seed_text, int count);

struct GenerationOptions {
  std::string model;
  double temperature = 0.0;
  int max_tokens = 2048;
  int max_attempts = 3;  // parse retries with re-prompt
};

// Asks `llm` for `count` typed constraints. Unparseable replies are
// re-prompted up to max_attempts; the last failure becomes kGeneration.
// A parsed set that fails validation raises kValidation with the payload.
std::vector<Requirement> ProposeRequirements(
    const SeedInstruction& seed, ChatClient& llm, int count,
    const GenerationOptions& options,
    const PromptTemplate& tpl = BuiltinConstraintTemplate());

}  // namespace reqdrop

#endif  // REQDROP_VARIATION_H_
