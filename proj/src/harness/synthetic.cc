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

#include "reqdrop/harness/synthetic.h"

#include <algorithm>
#include <array>

#include "reqdrop/error.h"
#include "reqdrop/rng.h"
#include "reqdrop/templates.h"
#include "reqdrop/variation.h"

namespace reqdrop::synthetic {
namespace {

using Type = CheckableConstraint::Type;

const std::vector<std::string>& FillerWords() {
  static const std::vector<std::string> words = {
      "the",  "story", "plan",   "idea",  "moves", "forward", "with",
      "care", "and",   "clear",  "purpose", "every", "step",  "builds",
      "on",   "what",  "came",   "before", "a",    "steady",  "voice"};
  return words;
}

constexpr std::array<std::pair<int, int>, 4> kWordRanges = {
    {{60, 80}, {90, 110}, {120, 150}, {160, 200}}};
constexpr std::array<int, 3> kMinLines = {5, 6, 7};
constexpr std::array<int, 2> kParagraphCounts = {2, 3};

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string RawLabel(RequirementKind kind) {
  switch (kind) {
    case RequirementKind::kLength: return "Length Constraints";
    case RequirementKind::kContent: return "Content";
    case RequirementKind::kStyle: return "style constraints";
    case RequirementKind::kFormat: return "Format";
  }
  return "Content";
}

struct TopicTemplate {
  TaskCategory category;
  std::vector<std::string> forms;
};

const std::vector<TopicTemplate>& CategoryForms() {
  static const std::vector<TopicTemplate> forms = {
      {TaskCategory::kCreativeNarrative,
       {"Write a short story about {t}.", "Compose a poem that tells the story of {t}.",
        "Write a narrative scene where a character discovers {t}."}},
      {TaskCategory::kFrameworksPlans,
       {"Draft a step-by-step plan for {t}.", "Create a structured framework for managing {t}.",
        "Outline a phased project plan to launch {t}."}},
      {TaskCategory::kLongFormAcademic,
       {"Write an academic essay analyzing {t}.", "Write a research paper section reviewing the literature on {t}.",
        "Compose a scholarly essay examining the history of {t}."}},
      {TaskCategory::kDiscussionExpression,
       {"Share your opinion on {t} and argue for it.", "Discuss whether {t} is a good idea and defend your view.",
        "Express your personal perspective on the debate about {t}."}},
      {TaskCategory::kInformationalPractical,
       {"Write a practical guide explaining {t}.", "Write an informative how-to article on {t}.",
        "Prepare a practical checklist and tips for {t}."}},
  };
  return forms;
}

const std::vector<std::string>& Topics() {
  static const std::vector<std::string> topics = {
      "a lighthouse keeper", "urban beekeeping", "remote work", "a city garden",
      "renewable energy", "a lost letter", "tidal power", "public libraries",
      "a mountain village", "electric bicycles", "a night market", "ocean plastics",
      "an old violin", "school lunches", "a winter festival", "composting at home",
      "a train journey", "community radio", "a desert expedition", "water recycling",
      "a family recipe", "open source software", "a rescued dog", "night sky photography",
      "a small bakery", "language learning", "a robot gardener", "volunteer firefighters",
      "a forgotten island", "budget travel"};
  return topics;
}

}  // namespace

const std::vector<std::string>& RequiredTokenPool() {
  static const std::vector<std::string> pool = {
      "zephyr", "quokka", "obsidian", "lantern", "saffron", "meridian",
      "cobalt", "juniper", "tundra",  "basalt",  "marigold", "nebula"};
  return pool;
}

const std::vector<std::string>& HabitWords() {
  static const std::vector<std::string> words = {
      "basically", "really", "actually", "very", "just", "quite"};
  return words;
}

std::vector<CheckableConstraint> SyntheticConstraints(uint64_t seed, int n) {
  Require(n >= 2 && n <= 12, "synthetic constraint count must be in [2, 12]");
  Rng rng(seed);
  std::vector<std::string> tokens = RequiredTokenPool();
  std::vector<std::string> habits = HabitWords();
  rng.Shuffle(tokens);
  rng.Shuffle(habits);
  bool used_range = false, used_lines = false, used_paragraphs = false;

  auto available = [&] {
    std::vector<Type> types;
    if (!tokens.empty()) types.push_back(Type::kContainsToken);
    if (!used_range) types.push_back(Type::kWordCountInRange);
    if (!used_lines) types.push_back(Type::kMinLines);
    if (!habits.empty()) types.push_back(Type::kForbiddenToken);
    if (!used_paragraphs) types.push_back(Type::kParagraphCount);
    return types;
  };
  auto draw = [&](Type type) {
    switch (type) {
      case Type::kContainsToken: {
        std::string token = tokens.back();
        tokens.pop_back();
        return CheckableConstraint::ContainsToken(token);
      }
      case Type::kWordCountInRange: {
        used_range = true;
        const auto [lo, hi] = kWordRanges[rng.UniformIndex(kWordRanges.size())];
        return CheckableConstraint::WordCountInRange(lo, hi);
      }
      case Type::kMinLines:
        used_lines = true;
        return CheckableConstraint::MinLines(kMinLines[rng.UniformIndex(kMinLines.size())]);
      case Type::kForbiddenToken: {
        std::string token = habits.back();
        habits.pop_back();
        return CheckableConstraint::ForbiddenToken(token);
      }
      case Type::kParagraphCount:
        used_paragraphs = true;
        return CheckableConstraint::ParagraphCount(
            kParagraphCounts[rng.UniformIndex(kParagraphCounts.size())]);
    }
    Fail(ErrorKind::kPrecondition, "unreachable constraint type");
  };

  std::vector<CheckableConstraint> out;
  for (int i = 0; i < n; ++i) {
    const auto types = available();
    out.push_back(draw(types[rng.UniformIndex(types.size())]));
  }
  const RequirementKind first = KindOf(out.front().type);
  const bool single_kind = std::all_of(out.begin(), out.end(), [&](const auto& c) {
    return KindOf(c.type) == first;
  });
  if (single_kind) {
    for (Type type : available()) {
      if (KindOf(type) != first) {
        out.back() = draw(type);
        break;
      }
    }
  }
  return out;
}

std::string TemplateResponse(std::string_view prompt) {
  const auto constraints = CheckableSubset(RequirementLinesOf(prompt));
  std::vector<std::string> include;
  std::vector<std::string> forbidden;
  int words = kDefaultWords;
  int paragraphs = 1;
  int min_lines = 0;
  for (const auto& c : constraints) {
    switch (c.type) {
      case Type::kContainsToken: include.push_back(c.token); break;
      case Type::kForbiddenToken: forbidden.push_back(c.token); break;
      case Type::kWordCountInRange: words = (c.lo + c.hi) / 2; break;
      case Type::kMinLines: min_lines = c.lo; break;
      case Type::kParagraphCount: paragraphs = std::max(1, c.lo); break;
    }
  }
  auto is_forbidden = [&](const std::string& w) {
    return std::find(forbidden.begin(), forbidden.end(), w) != forbidden.end();
  };

  std::vector<std::string> body = include;
  for (const auto& habit : HabitWords()) {
    if (!is_forbidden(habit)) body.push_back(habit);
  }
  const int lines = std::max(min_lines, paragraphs);
  words = std::max({words, static_cast<int>(body.size()), lines});
  const auto& filler = FillerWords();
  size_t cursor = Fnv1a(prompt.substr(0, prompt.find('\n'))) % filler.size();
  for (size_t guard = 0; static_cast<int>(body.size()) < words; ++guard) {
    const std::string& w = filler[cursor++ % filler.size()];
    if (!is_forbidden(w) || guard > 4 * filler.size() * words) body.push_back(w);
  }

  std::string out;
  size_t next_word = 0;
  int line_index = 0;
  for (int p = 0; p < paragraphs; ++p) {
    if (p > 0) out += "\n\n";
    const int lines_here = lines / paragraphs + (p < lines % paragraphs ? 1 : 0);
    for (int l = 0; l < lines_here; ++l, ++line_index) {
      if (l > 0) out += '\n';
      const int words_here = words / lines + (line_index < words % lines ? 1 : 0);
      for (int w = 0; w < words_here; ++w) {
        if (w > 0) out += ' ';
        out += body[next_word++];
      }
    }
  }
  return out;
}

std::string ConstraintReply(std::string_view prompt, uint64_t seed) {
  int count = 5;
  const size_t keys = prompt.find("with keys ");
  if (keys != std::string_view::npos) {
    const size_t end = prompt.find(" representing", keys);
    const std::string_view list = prompt.substr(keys, end - keys);
    int found = 0;
    while (list.find("t" + std::to_string(found + 1)) != std::string_view::npos) {
      ++found;
    }
    if (found >= 2) count = found;
  }
  std::string_view question = prompt;
  const size_t marker = prompt.rfind("[Seed Question]");
  if (marker != std::string_view::npos) question = prompt.substr(marker);

  const auto constraints = SyntheticConstraints(DeriveSeed(seed, question), count);
  std::vector<ParsedConstraint> parsed;
  for (const auto& c : constraints) {
    parsed.push_back({RenderCheckable(c), KindOf(c.type), RawLabel(KindOf(c.type))});
  }
  return "Here are the constraints.\n```json\n" + SerializeConstraintJson(parsed) +
         "\n```\n";
}

Corpus MakeCorpus(int candidates_per_category, int prototypes_per_category,
                  uint64_t seed) {
  const auto& topics = Topics();
  Rng rng(seed);
  Corpus corpus;
  for (const auto& entry : CategoryForms()) {
    std::vector<std::string> texts;
    for (const auto& form : entry.forms) {
      for (const auto& topic : topics) texts.push_back(Substitute(form, {{"t", topic}}));
    }
    Require(static_cast<size_t>(candidates_per_category + prototypes_per_category) <=
                texts.size(),
            "synthetic corpus has " + std::to_string(texts.size()) +
                " distinct questions per category");
    rng.Shuffle(texts);
    const std::string label(TaskCategoryName(entry.category));
    size_t next = 0;
    for (int i = 0; i < prototypes_per_category; ++i) {
      corpus.prototypes.push_back(
          {entry.category, "proto-" + label + "-" + std::to_string(i), texts[next++]});
    }
    for (int i = 0; i < candidates_per_category; ++i) {
      corpus.candidates.push_back({"seed-" + label + "-" + std::to_string(i),
                                   texts[next++], "synthetic", std::nullopt});
    }
  }
  return corpus;
}

}  // namespace reqdrop::synthetic
