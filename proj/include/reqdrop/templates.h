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

#ifndef REQDROP_TEMPLATES_H_
#define REQDROP_TEMPLATES_H_

#include <map>
#include <string>

namespace reqdrop {

// A versioned prompt template. Placeholders are written {name}.
struct PromptTemplate {
  std::string name;
  std::string text;

  // Short content hash, cited in scorer ids and provenance.
  std::string Digest() const;
};

const PromptTemplate& BuiltinConstraintTemplate();
const PromptTemplate& BuiltinJudgeTemplate();

// Loads a template file; the name is the file stem.
PromptTemplate LoadTemplate(const std::string& path);

// Single pass: substituted values are never rescanned, so braces inside a
// seed question survive verbatim. Unknown placeholders are left untouched.
std::string Substitute(const std::string& text,
                       const std::map<std::string, std::string>& values);

}  // namespace reqdrop

#endif  // REQDROP_TEMPLATES_H_
