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

#ifndef REQDROP_CHECKABLE_H_
#define REQDROP_CHECKABLE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqdrop/variation.h"

namespace reqdrop {

// Machine-checkable requirement vocabulary. Every check is plain word
// arithmetic over a whitespace tokenizer:
//   words      = maximal runs of non-whitespace characters
//   lines      = lines containing at least one non-whitespace character
//   paragraphs = maximal runs of non-blank lines
// Token matches compare whole words, case-sensitively.
struct CheckableConstraint {
  enum class Type {
    kContainsToken,
    kWordCountInRange,
    kMinLines,
    kForbiddenToken,
    kParagraphCount,
  };

  Type type = Type::kContainsToken;
  std::string token;  // kContainsToken, kForbiddenToken
  int lo = 0;         // range low, min lines, or exact paragraph count
  int hi = 0;         // range high

  static CheckableConstraint ContainsToken(std::string token);
  static CheckableConstraint WordCountInRange(int lo, int hi);
  static CheckableConstraint MinLines(int k);
  static CheckableConstraint ForbiddenToken(std::string token);
  static CheckableConstraint ParagraphCount(int k);

  bool operator==(const CheckableConstraint&) const = default;
};

std::vector<std::string> SplitWords(std::string_view text);
int CountWords(std::string_view text);
int CountLines(std::string_view text);
int CountParagraphs(std::string_view text);

// The requirement sentence for a constraint, and its exact inverse.
std::string RenderCheckable(const CheckableConstraint& constraint);
std::optional<CheckableConstraint> ParseCheckable(std::string_view text);

RequirementKind KindOf(CheckableConstraint::Type type);

bool IsSatisfied(const CheckableConstraint& constraint,
                 std::string_view response);

// Fraction of satisfied constraints; 0 for an empty set.
double OracleScore(std::span<const CheckableConstraint> constraints,
                   std::string_view response);

// Parses every requirement that belongs to the checkable vocabulary and
// skips the rest.
std::vector<CheckableConstraint> CheckableSubset(
    const std::vector<std::string>& requirement_texts);

}  // namespace reqdrop

#endif  // REQDROP_CHECKABLE_H_
