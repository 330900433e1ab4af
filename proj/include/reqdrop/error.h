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

#ifndef REQDROP_ERROR_H_
#define REQDROP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace reqdrop {

// Failure classes surfaced by the toolkit. The CLI maps each to a structured
// error report; tests assert on the kind rather than on message text.
enum class ErrorKind {
  kPrecondition,
  kDomain,
  kIntegrity,
  kParse,
  kValidation,
  kGeneration,
  kTransport,
  kTraining,
  kIo,
  kConfig,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Transport failures carry the content hash of the request that failed so a
// run can be resumed or audited from the cache.
class TransportError : public Error {
 public:
  TransportError(const std::string& message, std::string request_hash)
      : Error(ErrorKind::kTransport, message),
        request_hash_(std::move(request_hash)) {}

  const std::string& request_hash() const { return request_hash_; }

 private:
  std::string request_hash_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorKind::kPrecondition, message);
}

}  // namespace reqdrop

#endif  // REQDROP_ERROR_H_
