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

#include "reqdrop/harness/log.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>

namespace reqdrop::log {
namespace {

struct State {
  std::mutex mu;
  Level level = Level::kWarning;
  bool disabled = false;
  std::unique_ptr<std::ofstream> file;
};

State& GetState() {
  static State state;
  return state;
}

std::string_view LevelName(Level level) {
  switch (level) {
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarning: return "warning";
    case Level::kError: return "error";
  }
  return "info";
}

}  // namespace

void SetSink(const std::string& path) {
  State& state = GetState();
  std::lock_guard<std::mutex> lock(state.mu);
  state.file.reset();
  state.disabled = path == "-";
  if (!path.empty() && !state.disabled) {
    state.file = std::make_unique<std::ofstream>(path, std::ios::app);
  }
}

void SetLevel(Level level) {
  State& state = GetState();
  std::lock_guard<std::mutex> lock(state.mu);
  state.level = level;
}

void Write(Level level, std::string_view event, Json fields) {
  State& state = GetState();
  std::lock_guard<std::mutex> lock(state.mu);
  if (state.disabled || level < state.level) return;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  fields["ts_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  fields["level"] = LevelName(level);
  fields["event"] = event;
  const std::string line = fields.dump() + "\n";
  if (state.file) {
    *state.file << line;
    state.file->flush();
  } else {
    std::cerr << line;
  }
}

}  // namespace reqdrop::log
