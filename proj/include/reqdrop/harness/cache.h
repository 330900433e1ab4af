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

#ifndef REQDROP_HARNESS_CACHE_H_
#define REQDROP_HARNESS_CACHE_H_

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "reqdrop/jsonl.h"

namespace reqdrop {

// Content hash of a canonical request: SHA-256 over the compact JSON dump.
// nlohmann objects are key-sorted, so logically equal requests collide.
std::string CacheKey(const Json& request);

struct CacheEntry {
  std::string key;
  Json value;
  std::string created_at;
  std::string backend_id;
  int64_t latency_ms = 0;
};

// Directory of immutable per-key files, fanned out as <dir>/ab/cd/<key>.json.
// An empty directory string keeps entries in memory only. Distinct keys may be
// written concurrently; a key, once written, is never rewritten.
class CallCache {
 public:
  explicit CallCache(std::string directory = "");

  std::optional<CacheEntry> Get(const std::string& key);
  void Put(const CacheEntry& entry);
  // Presence probe that leaves the hit and miss counters alone.
  bool Contains(const std::string& key);

  const std::string& directory() const { return directory_; }
  size_t hits() const { return hits_.load(); }
  size_t misses() const { return misses_.load(); }

 private:
  std::string PathFor(const std::string& key) const;

  std::string directory_;
  std::mutex mu_;
  std::map<std::string, CacheEntry> memory_;
  std::atomic<size_t> hits_{0};
  std::atomic<size_t> misses_{0};
};

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_CACHE_H_
