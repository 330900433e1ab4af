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

#include "reqdrop/checkable.h"

#include <cctype>
#include <regex>

namespace reqdrop {
namespace {

bool IsSpace(char ch) { return std::isspace(static_cast<unsigned char>(ch)); }

bool IsBlankLine(std::string_view line) {
  for (char ch : line) {
    if (!IsSpace(ch)) return false;
  }
  return true;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(start, end - start));
    start = end + 1;
  }
}

bool IsPunct(char ch) { return std::ispunct(static_cast<unsigned char>(ch)); }

// Whole-word match; punctuation hugging the word does not count.
bool HasWord(std::string_view response, const std::string& token) {
  for (const auto& word : SplitWords(response)) {
    std::string_view w = word;
    while (!w.empty() && IsPunct(w.front())) w.remove_prefix(1);
    while (!w.empty() && IsPunct(w.back())) w.remove_suffix(1);
    if (w == token) return true;
  }
  return false;
}

}  // namespace

CheckableConstraint CheckableConstraint::ContainsToken(std::string token) {
  return {Type::kContainsToken, std::move(token), 0, 0};
}
CheckableConstraint CheckableConstraint::WordCountInRange(int lo, int hi) {
  return {Type::kWordCountInRange, "", lo, hi};
}
CheckableConstraint CheckableConstraint::MinLines(int k) {
  return {Type::kMinLines, "", k, 0};
}
CheckableConstraint CheckableConstraint::ForbiddenToken(std::string token) {
  return {Type::kForbiddenToken, std::move(token), 0, 0};
}
CheckableConstraint CheckableConstraint::ParagraphCount(int k) {
  return {Type::kParagraphCount, "", k, 0};
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    const size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

int CountWords(std::string_view text) {
  return static_cast<int>(SplitWords(text).size());
}

int CountLines(std::string_view text) {
  int lines = 0;
  ForEachLine(text, [&](std::string_view line) {
    if (!IsBlankLine(line)) ++lines;
  });
  return lines;
}

int CountParagraphs(std::string_view text) {
  int paragraphs = 0;
  bool in_paragraph = false;
  ForEachLine(text, [&](std::string_view line) {
    const bool blank = IsBlankLine(line);
    if (!blank && !in_paragraph) ++paragraphs;
    in_paragraph = !blank;
  });
  return paragraphs;
}

std::string RenderCheckable(const CheckableConstraint& c) {
  using T = CheckableConstraint::Type;
  switch (c.type) {
    case T::kContainsToken:
      return "Include the word \"" + c.token + "\".";
    case T::kWordCountInRange:
      return "Use between " + std::to_string(c.lo) + " and " +
             std::to_string(c.hi) + " words.";
    case T::kMinLines:
      return "Write at least " + std::to_string(c.lo) + " lines.";
    case T::kForbiddenToken:
      return "Do not use the word \"" + c.token + "\".";
    case T::kParagraphCount:
      return "Write exactly " + std::to_string(c.lo) + " paragraphs.";
  }
  return "";
}

std::optional<CheckableConstraint> ParseCheckable(std::string_view text) {
  static const std::regex kContains(R"re(Include the word "([^"\s]+)"\.)re");
  static const std::regex kRange(R"re(Use between (\d+) and (\d+) words\.)re");
  static const std::regex kLines(R"re(Write at least (\d+) lines\.)re");
  static const std::regex kForbidden(R"re(Do not use the word "([^"\s]+)"\.)re");
  static const std::regex kParagraphs(R"re(Write exactly (\d+) paragraphs\.)re");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kContains)) {
    return CheckableConstraint::ContainsToken(m[1]);
  }
  if (std::regex_match(s, m, kRange)) {
    const int lo = std::stoi(m[1]);
    const int hi = std::stoi(m[2]);
    if (lo > hi) return std::nullopt;
    return CheckableConstraint::WordCountInRange(lo, hi);
  }
  if (std::regex_match(s, m, kLines)) {
    return CheckableConstraint::MinLines(std::stoi(m[1]));
  }
  if (std::regex_match(s, m, kForbidden)) {
    return CheckableConstraint::ForbiddenToken(m[1]);
  }
  if (std::regex_match(s, m, kParagraphs)) {
    return CheckableConstraint::ParagraphCount(std::stoi(m[1]));
  }
  return std::nullopt;
}

RequirementKind KindOf(CheckableConstraint::Type type) {
  using T = CheckableConstraint::Type;
  switch (type) {
    case T::kContainsToken: return RequirementKind::kContent;
    case T::kWordCountInRange: return RequirementKind::kLength;
    case T::kMinLines: return RequirementKind::kFormat;
    case T::kForbiddenToken: return RequirementKind::kStyle;
    case T::kParagraphCount: return RequirementKind::kLength;
  }
  return RequirementKind::kContent;
}

bool IsSatisfied(const CheckableConstraint& c, std::string_view response) {
  using T = CheckableConstraint::Type;
  switch (c.type) {
    case T::kContainsToken: return HasWord(response, c.token);
    case T::kWordCountInRange: {
      const int words = CountWords(response);
      return words >= c.lo && words <= c.hi;
    }
    case T::kMinLines: return CountLines(response) >= c.lo;
    case T::kForbiddenToken: return !HasWord(response, c.token);
    case T::kParagraphCount: return CountParagraphs(response) == c.lo;
  }
  return false;
}

double OracleScore(std::span<const CheckableConstraint> constraints,
                   std::string_view response) {
  if (constraints.empty()) return 0.0;
  int satisfied = 0;
  for (const auto& c : constraints) satisfied += IsSatisfied(c, response);
  return static_cast<double>(satisfied) /
         static_cast<double>(constraints.size());
}

std::vector<CheckableConstraint> CheckableSubset(
    const std::vector<std::string>& requirement_texts) {
  std::vector<CheckableConstraint> out;
  for (const auto& text : requirement_texts) {
    if (auto c = ParseCheckable(text)) out.push_back(std::move(*c));
  }
  return out;
}

}  // namespace reqdrop
