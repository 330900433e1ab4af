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

#include "reqdrop/harness/http.h"

#include <cstdlib>

#include "httplib.h"
#include "reqdrop/error.h"

namespace reqdrop::http {
namespace {

Json ParseBody(const httplib::Result& result, const std::string& url) {
  if (!result) {
    throw TransportError(
        "request to " + url + " failed: " + httplib::to_string(result.error()),
        "");
  }
  if (result->status < 200 || result->status >= 300) {
    throw TransportError("request to " + url + " returned HTTP " +
                             std::to_string(result->status) + ": " +
                             result->body.substr(0, 512),
                         "");
  }
  Json body = Json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded()) {
    throw TransportError("response from " + url + " is not JSON", "");
  }
  return body;
}

httplib::Client MakeClient(const std::string& base, int timeout_seconds) {
  httplib::Client client(base);
  client.set_connection_timeout(std::min(timeout_seconds, 10), 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  return client;
}

}  // namespace

std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    Fail(ErrorKind::kConfig, "endpoint '" + url + "' lacks a scheme");
  }
  const size_t path = url.find('/', scheme + 3);
  if (path == std::string::npos) return {url, "/"};
  return {url.substr(0, path), url.substr(path)};
}

Json PostJson(const std::string& url, const Json& body, const Headers& headers,
              int timeout_seconds) {
  const auto [base, path] = SplitUrl(url);
  auto client = MakeClient(base, timeout_seconds);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  return ParseBody(client.Post(path, h, body.dump(), "application/json"), url);
}

Json GetJson(const std::string& url, int timeout_seconds) {
  const auto [base, path] = SplitUrl(url);
  auto client = MakeClient(base, timeout_seconds);
  return ParseBody(client.Get(path), url);
}

Headers BearerFromEnv(const std::string& env_var) {
  if (env_var.empty()) return {};
  const char* value = std::getenv(env_var.c_str());
  if (value == nullptr || *value == '\0') return {};
  return {{"Authorization", std::string("Bearer ") + value}};
}

}  // namespace reqdrop::http
