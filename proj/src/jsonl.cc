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

#include "reqdrop/jsonl.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "reqdrop/error.h"

namespace reqdrop {

namespace fs = std::filesystem;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool FileExists(const std::string& path) {
  std::error_code ec;
  return fs::is_regular_file(path, ec);
}

void ForEachJsonl(const std::string& path,
                  const std::function<void(const Json&, size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path);
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_number);
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::exception& e) {
      Fail(ErrorKind::kParse, where + ": " + e.what());
    }
    try {
      fn(record, line_number);
    } catch (const TransportError&) {
      throw;
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what());
    } catch (const Json::exception& e) {
      Fail(ErrorKind::kValidation, where + ": " + e.what());
    }
  }
}

std::vector<Json> ReadJsonl(const std::string& path) {
  std::vector<Json> records;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    records.push_back(record);
  });
  return records;
}

std::string DumpJsonl(const std::vector<Json>& records) {
  std::string out;
  for (const auto& record : records) {
    out += record.dump();
    out += '\n';
  }
  return out;
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  static std::atomic<uint64_t> counter{0};
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." +
                          std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorKind::kIo, "cannot write " + tmp);
    out << contents;
    out.flush();
    if (!out) Fail(ErrorKind::kIo, "short write to " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    Fail(ErrorKind::kIo, "cannot rename into " + path);
  }
}

}  // namespace reqdrop
