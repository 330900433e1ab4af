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

#ifndef REQDROP_HARNESS_HTTP_H_
#define REQDROP_HARNESS_HTTP_H_

#include <string>
#include <utility>
#include <vector>

#include "reqdrop/jsonl.h"

namespace reqdrop::http {

using Headers = std::vector<std::pair<std::string, std::string>>;

// "http://host:port/a/b" -> {"http://host:port", "/a/b"}.
std::pair<std::string, std::string> SplitUrl(const std::string& url);

// JSON request helpers. Connection failures, non-2xx statuses, and
// unparseable bodies raise TransportError (with an empty request hash; the
// caching layer fills it in).
Json PostJson(const std::string& url, const Json& body,
              const Headers& headers = {}, int timeout_seconds = 60);
Json GetJson(const std::string& url, int timeout_seconds = 10);

// Authorization header from an env var name; empty when unset.
Headers BearerFromEnv(const std::string& env_var);

}  // namespace reqdrop::http

#endif  // REQDROP_HARNESS_HTTP_H_
