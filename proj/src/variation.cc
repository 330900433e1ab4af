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

#include "reqdrop/variation.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <utility>

#include "reqdrop/error.h"

namespace reqdrop {
namespace {

constexpr std::string_view kRequirementsHeader = "\n\nRequirements:\n";

std::string Trim(std::string_view s) {
  const size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

bool StripSuffix(std::string& s, std::string_view suffix) {
  if (s.size() >= suffix.size() &&
      s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
    s.erase(s.size() - suffix.size());
    s = Trim(s);
    return true;
  }
  return false;
}

const std::map<std::string, RequirementKind>& KindTable() {
  using K = RequirementKind;
  static const std::map<std::string, RequirementKind> table = {
      {"content", K::kContent},
      {"style", K::kStyle},
      {"stylistic", K::kStyle},
      {"format", K::kFormat},
      {"formatting", K::kFormat},
      {"structure", K::kFormat},
      {"structural", K::kFormat},
      {"length", K::kLength},
      // Sub-type headings listed under each kind in the constraint prompt.
      {"word limit", K::kLength},
      {"sentence limit", K::kLength},
      {"paragraph limit", K::kLength},
      {"proportional distribution", K::kLength},
      {"character limit", K::kLength},
      {"sentence length", K::kLength},
      {"word count", K::kLength},
      {"tone", K::kStyle},
      {"rhetorical devices", K::kStyle},
      {"rhetorical device", K::kStyle},
      {"audience", K::kStyle},
      {"identity/voice", K::kStyle},
      {"identity", K::kStyle},
      {"voice", K::kStyle},
      {"emotional appeal", K::kStyle},
      {"literary device", K::kStyle},
      {"literary devices", K::kStyle},
      {"cultural voice", K::kStyle},
      {"required entities", K::kContent},
      {"chronological order", K::kContent},
      {"data requirement", K::kContent},
      {"thematic coverage", K::kContent},
      {"time-space perspective", K::kContent},
      {"interdisciplinary focus", K::kContent},
      {"counterargument", K::kContent},
      {"hypothetical scenario", K::kContent},
  };
  return table;
}

std::string NumberWord(int n) {
  static constexpr std::array<const char*, 11> kWords = {
      "zero", "one", "two",   "three", "four", "five",
      "six",  "seven", "eight", "nine",  "ten"};
  if (n >= 0 && n < static_cast<int>(kWords.size())) return kWords[n];
  return std::to_string(n);
}

std::string KeyList(int count) {
  std::string out;
  for (int i = 1; i <= count; ++i) {
    if (i > 1) out += ", ";
    out += "c" + std::to_string(i) + ", t" + std::to_string(i);
  }
  return out;
}

std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

}  // namespace

std::string_view RequirementKindName(RequirementKind kind) {
  switch (kind) {
    case RequirementKind::kContent: return "Content";
    case RequirementKind::kStyle: return "Style";
    case RequirementKind::kFormat: return "Format";
    case RequirementKind::kLength: return "Length";
  }
  return "";
}

RequirementKind ParseRequirementKind(std::string_view name) {
  for (auto kind : {RequirementKind::kContent, RequirementKind::kStyle,
                    RequirementKind::kFormat, RequirementKind::kLength}) {
    if (RequirementKindName(kind) == name) return kind;
  }
  Fail(ErrorKind::kParse, "unknown requirement kind '" + std::string(name) + "'");
}

std::optional<RequirementKind> NormalizeKindLabel(std::string_view label) {
  std::string key = Lower(Trim(label));
  if (key.empty()) return std::nullopt;
  for (std::string_view suffix :
       {"constraints", "constraint", "requirements", "requirement", "type"}) {
    if (StripSuffix(key, suffix)) break;
  }
  const auto& table = KindTable();
  if (auto it = table.find(key); it != table.end()) return it->second;

  // Fallback: the label names exactly one kind somewhere inside it.
  static const std::array<std::pair<std::string_view, RequirementKind>, 4>
      kStems = {{{"content", RequirementKind::kContent},
                 {"styl", RequirementKind::kStyle},
                 {"format", RequirementKind::kFormat},
                 {"length", RequirementKind::kLength}}};
  std::optional<RequirementKind> found;
  for (const auto& [stem, kind] : kStems) {
    if (key.find(stem) != std::string::npos) {
      if (found) return std::nullopt;
      found = kind;
    }
  }
  return found;
}

Json ToJson(const AugmentedQuery& query) {
  Json reqs = Json::array();
  for (const auto& r : query.requirements) {
    reqs.push_back({{"index", r.index},
                    {"kind", RequirementKindName(r.kind)},
                    {"text", r.text},
                    {"raw_kind", r.raw_kind}});
  }
  Json out = {{"seed_id", query.seed.id},
              {"seed_text", query.seed.text},
              {"seed_source", query.seed.source},
              {"requirements", reqs},
              {"composed_text", query.composed_text}};
  if (query.seed.category) {
    out["category"] = TaskCategoryName(*query.seed.category);
  }
  return out;
}

AugmentedQuery AugmentedQueryFromJson(const Json& record) {
  AugmentedQuery query;
  query.seed.id = record.at("seed_id").get<std::string>();
  query.seed.text = record.at("seed_text").get<std::string>();
  query.seed.source = record.value("seed_source", "");
  if (record.contains("category") && !record["category"].is_null()) {
    query.seed.category =
        ParseTaskCategory(record["category"].get<std::string>());
  }
  for (const auto& r : record.at("requirements")) {
    Requirement req;
    req.index = r.at("index").get<int>();
    req.kind = ParseRequirementKind(r.at("kind").get<std::string>());
    req.text = r.at("text").get<std::string>();
    req.raw_kind = r.value("raw_kind", "");
    query.requirements.push_back(std::move(req));
  }
  query.composed_text = record.at("composed_text").get<std::string>();
  if (query.composed_text.find(query.seed.text) == std::string::npos) {
    Fail(ErrorKind::kValidation,
         "composed_text of '" + query.seed.id + "' does not contain its seed");
  }
  return query;
}

std::optional<Json> ExtractFirstJsonObject(std::string_view raw) {
  for (size_t start = raw.find('{'); start != std::string_view::npos;
       start = raw.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t i = start; i < raw.size(); ++i) {
      const char ch = raw[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (ch == '\\') {
          escaped = true;
        } else if (ch == '"') {
          in_string = false;
        }
        continue;
      }
      if (ch == '"') {
        in_string = true;
      } else if (ch == '{') {
        ++depth;
      } else if (ch == '}' && --depth == 0) {
        Json parsed = Json::parse(raw.substr(start, i - start + 1), nullptr,
                                  /*allow_exceptions=*/false);
        if (!parsed.is_discarded() && parsed.is_object()) return parsed;
        break;
      }
    }
  }
  return std::nullopt;
}

std::vector<ParsedConstraint> ParseConstraintJson(std::string_view raw,
                                                  int count) {
  const auto object = ExtractFirstJsonObject(raw);
  if (!object) Fail(ErrorKind::kParse, "no JSON object in reply");

  std::set<std::string> expected;
  for (int i = 1; i <= count; ++i) {
    expected.insert("c" + std::to_string(i));
    expected.insert("t" + std::to_string(i));
  }
  for (const auto& [key, value] : object->items()) {
    if (!expected.count(key)) {
      Fail(ErrorKind::kParse, "unexpected key '" + key + "'");
    }
  }

  std::vector<ParsedConstraint> out;
  for (int i = 1; i <= count; ++i) {
    const std::string ckey = "c" + std::to_string(i);
    const std::string tkey = "t" + std::to_string(i);
    for (const auto& key : {ckey, tkey}) {
      if (!object->contains(key)) Fail(ErrorKind::kParse, "missing key " + key);
      if (!(*object)[key].is_string()) {
        Fail(ErrorKind::kParse, "field " + key + " is not a string");
      }
    }
    ParsedConstraint parsed;
    parsed.text = Trim((*object)[ckey].get<std::string>());
    if (parsed.text.empty()) Fail(ErrorKind::kParse, "field " + ckey + " is empty");
    parsed.raw_kind = (*object)[tkey].get<std::string>();
    const auto kind = NormalizeKindLabel(parsed.raw_kind);
    if (!kind) {
      Fail(ErrorKind::kParse,
           "field " + tkey + " has unknown kind '" + parsed.raw_kind + "'");
    }
    parsed.kind = *kind;
    out.push_back(std::move(parsed));
  }
  return out;
}

std::string SerializeConstraintJson(
    const std::vector<ParsedConstraint>& constraints) {
  Json out = Json::object();
  for (size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    out["c" + std::to_string(i + 1)] = c.text;
    out["t" + std::to_string(i + 1)] =
        c.raw_kind.empty() ? std::string(RequirementKindName(c.kind))
                           : c.raw_kind;
  }
  return out.dump();
}

std::vector<std::string> ValidateRequirements(
    const std::vector<Requirement>& requirements) {
  std::vector<std::string> violations;
  std::set<RequirementKind> kinds;
  std::set<std::string> texts;
  std::set<int> indices;
  bool duplicate_text = false;
  bool empty_text = false;
  for (const auto& r : requirements) {
    kinds.insert(r.kind);
    const std::string text = Trim(r.text);
    if (text.empty()) empty_text = true;
    if (!text.empty() && !texts.insert(text).second) duplicate_text = true;
    if (!indices.insert(r.index).second) {
      violations.push_back("duplicate index " + std::to_string(r.index));
    }
  }
  if (empty_text) violations.push_back("empty text");
  if (duplicate_text) violations.push_back("duplicate text");
  if (!requirements.empty() && kinds.size() < 2) {
    violations.push_back("single-kind set");
  }
  return violations;
}

std::string ComposeText(const std::string& seed_text,
                        const std::vector<std::string>& requirement_texts) {
  std::string out = seed_text;
  out += kRequirementsHeader;
  for (size_t i = 0; i < requirement_texts.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". " + requirement_texts[i];
  }
  return out;
}

std::vector<std::string> RequirementLinesOf(std::string_view composed_text) {
  std::vector<std::string> out;
  const size_t header = composed_text.rfind(kRequirementsHeader);
  if (header == std::string_view::npos) return out;
  std::string_view rest = composed_text.substr(header + kRequirementsHeader.size());
  int expected = 1;
  while (!rest.empty()) {
    const size_t end = rest.find('\n');
    std::string_view line = rest.substr(0, end);
    const std::string prefix = std::to_string(expected) + ". ";
    if (line.substr(0, prefix.size()) == prefix) {
      out.emplace_back(line.substr(prefix.size()));
      ++expected;
    }
    if (end == std::string_view::npos) break;
    rest.remove_prefix(end + 1);
  }
  return out;
}

AugmentedQuery ComposeQuery(const SeedInstruction& seed,
                            const std::vector<Requirement>& requirements) {
  Require(!requirements.empty(), "compose_query needs at least one requirement");
  std::vector<std::string> texts;
  texts.reserve(requirements.size());
  for (const auto& r : requirements) texts.push_back(r.text);
  return {seed, requirements, ComposeText(seed.text, texts)};
}

std::string RenderConstraintPrompt(const PromptTemplate& tpl,
                                   const std::string& seed_text, int count) {
  std::string text = tpl.text;
  if (count != 5) {
    text = ReplaceAll(text, KeyList(5), KeyList(count));
    text = ReplaceAll(text, " five ", " " + NumberWord(count) + " ");
  }
  return Substitute(text, {{"raw_question", seed_text}});
}

std::vector<Requirement> ProposeRequirements(const SeedInstruction& seed,
                                             ChatClient& llm, int count,
                                             const GenerationOptions& options,
                                             const PromptTemplate& tpl) {
  Require(count >= 2, "need at least two requirements");
  ChatRequest request;
  request.model = options.model;
  request.temperature = options.temperature;
  request.max_tokens = options.max_tokens;
  request.messages.push_back(
      {"user", RenderConstraintPrompt(tpl, seed.text, count)});

  std::string last_error;
  std::string raw;
  std::optional<std::vector<ParsedConstraint>> parsed;
  const int attempts = std::max(1, options.max_attempts);
  for (int attempt = 0; attempt < attempts && !parsed; ++attempt) {
    raw = llm.Complete(request);
    try {
      parsed = ParseConstraintJson(raw, count);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kParse) throw;
      last_error = e.what();
      request.messages.push_back({"assistant", raw});
      request.messages.push_back(
          {"user", "Your reply could not be parsed (" + last_error +
                       "). Reply with only the strict JSON object with keys " +
                       KeyList(count) + "."});
    }
  }
  if (!parsed) {
    Fail(ErrorKind::kGeneration,
         "seed '" + seed.id + "': unparseable constraint reply after " +
             std::to_string(attempts) + " attempts: " + last_error);
  }

  std::vector<Requirement> requirements;
  for (size_t i = 0; i < parsed->size(); ++i) {
    const auto& c = (*parsed)[i];
    requirements.push_back(
        {static_cast<int>(i + 1), c.kind, c.text, c.raw_kind});
  }
  const auto violations = ValidateRequirements(requirements);
  if (!violations.empty()) {
    std::string joined;
    for (const auto& v : violations) joined += (joined.empty() ? "" : "; ") + v;
    Fail(ErrorKind::kValidation,
         "seed '" + seed.id + "': " + joined + "; payload: " + raw);
  }
  return requirements;
}

}  // namespace reqdrop
