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

#ifndef REQDROP_HARNESS_LOG_H_
#define REQDROP_HARNESS_LOG_H_

#include <string>
#include <string_view>

#include "reqdrop/jsonl.h"

namespace reqdrop::log {

enum class Level { kDebug, kInfo, kWarning, kError };

// Structured JSON-lines log. Defaults to stderr at kWarning; the CLI raises or
// redirects it. Thread-safe.
void SetSink(const std::string& path);  // "" = stderr, "-" = disabled
void SetLevel(Level level);

void Write(Level level, std::string_view event, Json fields = Json::object());

inline void Debug(std::string_view event, Json fields = Json::object()) {
  Write(Level::kDebug, event, std::move(fields));
}
inline void Info(std::string_view event, Json fields = Json::object()) {
  Write(Level::kInfo, event, std::move(fields));
}
inline void Warning(std::string_view event, Json fields = Json::object()) {
  Write(Level::kWarning, event, std::move(fields));
}

}  // namespace reqdrop::log

#endif  // REQDROP_HARNESS_LOG_H_
