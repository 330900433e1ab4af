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

#include "reqdrop/harness/cache.h"

#include <filesystem>

#include "reqdrop/error.h"
#include "reqdrop/hash.h"

namespace reqdrop {

namespace fs = std::filesystem;

std::string CacheKey(const Json& request) { return Sha256Hex(request.dump()); }

CallCache::CallCache(std::string directory) : directory_(std::move(directory)) {
  if (!directory_.empty()) {
    std::error_code ec;
    fs::create_directories(directory_, ec);
    if (ec) Fail(ErrorKind::kIo, "cannot create cache dir " + directory_);
  }
}

std::string CallCache::PathFor(const std::string& key) const {
  return (fs::path(directory_) / key.substr(0, 2) / key.substr(2, 2) /
          (key + ".json"))
      .string();
}

std::optional<CacheEntry> CallCache::Get(const std::string& key) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memory_.find(key);
    if (it != memory_.end()) {
      ++hits_;
      return it->second;
    }
  }
  if (directory_.empty()) {
    ++misses_;
    return std::nullopt;
  }
  const std::string path = PathFor(key);
  if (!FileExists(path)) {
    ++misses_;
    return std::nullopt;
  }
  Json stored;
  try {
    stored = Json::parse(ReadFile(path));
  } catch (const Json::exception&) {
    // Entries are renamed into place whole, so this is outside corruption.
    Fail(ErrorKind::kIntegrity, "corrupt cache entry " + path);
  }
  CacheEntry entry;
  entry.key = stored.at("key").get<std::string>();
  if (entry.key != key) {
    Fail(ErrorKind::kIntegrity, "cache entry key mismatch at " + path);
  }
  entry.value = stored.at("value");
  entry.created_at = stored.value("created_at", "");
  entry.backend_id = stored.value("backend_id", "");
  entry.latency_ms = stored.value("latency_ms", int64_t{0});
  {
    std::lock_guard<std::mutex> lock(mu_);
    memory_.emplace(key, entry);
  }
  ++hits_;
  return entry;
}

bool CallCache::Contains(const std::string& key) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (memory_.count(key)) return true;
  }
  return !directory_.empty() && FileExists(PathFor(key));
}

void CallCache::Put(const CacheEntry& entry) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!memory_.emplace(entry.key, entry).second) return;
  }
  if (directory_.empty()) return;
  const std::string path = PathFor(entry.key);
  if (FileExists(path)) return;
  Json stored = {{"key", entry.key},
                 {"value", entry.value},
                 {"created_at", entry.created_at},
                 {"backend_id", entry.backend_id},
                 {"latency_ms", entry.latency_ms}};
  WriteFileAtomic(path, stored.dump(2) + "\n");
}

}  // namespace reqdrop
