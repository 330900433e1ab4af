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

#ifndef REQDROP_JSONL_H_
#define REQDROP_JSONL_H_

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace reqdrop {

using Json = nlohmann::json;

// Reads a JSONL file. Blank lines are skipped; a malformed line raises a
// kParse error naming "path:line".
std::vector<Json> ReadJsonl(const std::string& path);

// Calls `fn(record, line_number)` per record; exceptions of kind kParse or
// kValidation thrown by `fn` are rethrown with the file coordinate prefixed.
void ForEachJsonl(const std::string& path,
                  const std::function<void(const Json&, size_t)>& fn);

// Serializes one record per line (compact, sorted keys, trailing newline).
std::string DumpJsonl(const std::vector<Json>& records);

// Writes via a temporary file and rename, so readers never see a torn file.
void WriteFileAtomic(const std::string& path, const std::string& contents);

std::string ReadFile(const std::string& path);

bool FileExists(const std::string& path);

}  // namespace reqdrop

#endif  // REQDROP_JSONL_H_
