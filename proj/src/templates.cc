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

#include "reqdrop/templates.h"

#include <filesystem>

#include "reqdrop/hash.h"
#include "reqdrop/jsonl.h"
#include "templates_data.h"

namespace reqdrop {

std::string PromptTemplate::Digest() const {
  return Sha256Hex(text).substr(0, 12);
}

const PromptTemplate& BuiltinConstraintTemplate() {
  static const PromptTemplate tpl{"constraint_prompt_v1",
                                  std::string(templates_data::kConstraintV1)};
  return tpl;
}

const PromptTemplate& BuiltinJudgeTemplate() {
  static const PromptTemplate tpl{"judge_pointwise_v1",
                                  std::string(templates_data::kJudgeV1)};
  return tpl;
}

PromptTemplate LoadTemplate(const std::string& path) {
  return {std::filesystem::path(path).stem().string(), ReadFile(path)};
}

std::string Substitute(const std::string& text,
                       const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const size_t close = text.find('}', i + 1);
      if (close != std::string::npos) {
        auto it = values.find(text.substr(i + 1, close - i - 1));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

}  // namespace reqdrop
