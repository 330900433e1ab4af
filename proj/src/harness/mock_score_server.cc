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

#include "reqdrop/harness/mock_score_server.h"

#include <optional>

#include "httplib.h"
#include "reqdrop/checkable.h"

namespace reqdrop {
namespace {

HttpReply BadRequest(const std::string& message) {
  return {400, {{"error", message}}};
}

bool IsStringArray(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (!e.is_string()) return false;
  }
  return true;
}

// Parses the body and checks the shared fields plus `field`, which must be a
// string (single) or an array of strings (batch).
std::optional<HttpReply> CheckBody(const std::string& body, const char* field,
                                   bool array, Json& doc) {
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return BadRequest(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) return BadRequest("body must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "query" && key != "requirements" && key != field) {
      return BadRequest("unexpected field '" + key + "'");
    }
  }
  if (!doc.contains("query") || !doc["query"].is_string()) {
    return BadRequest("'query' must be a string");
  }
  if (!doc.contains("requirements") || !IsStringArray(doc["requirements"])) {
    return BadRequest("'requirements' must be an array of strings");
  }
  const bool ok = doc.contains(field) &&
                  (array ? IsStringArray(doc[field]) : doc[field].is_string());
  if (!ok) {
    return BadRequest("'" + std::string(field) + "' must be " +
                      (array ? "an array of strings" : "a string"));
  }
  return std::nullopt;
}

void Reply(httplib::Response& res, const HttpReply& reply) {
  res.status = reply.status;
  res.set_content(reply.body.dump(), "application/json");
}

}  // namespace

MockScoreServer::MockScoreServer(MockScoreOptions options) : options_(options) {
  server().Post("/v1/score", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    Reply(res, HandleScore(req.body));
  });
  server().Post("/v1/score_batch", [this](const httplib::Request& req,
                                          httplib::Response& res) {
    Reply(res, HandleBatch(req.body));
  });
  server().Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, {200, Health()});
  });
}

std::string MockScoreServer::scorer_id() const {
  return options_.mode == MockScoreOptions::Mode::kOracle ? "mock-oracle"
                                                          : "mock-constant";
}

Json MockScoreServer::Health() const {
  return {{"status", "ok"},
          {"max_batch_size", options_.max_batch_size},
          {"scorer_id", scorer_id()}};
}

double MockScoreServer::ScoreText(const std::vector<std::string>& requirements,
                                  const std::string& response) const {
  if (options_.mode == MockScoreOptions::Mode::kConstant) return options_.constant;
  return OracleScore(CheckableSubset(requirements), response);
}

HttpReply MockScoreServer::HandleScore(const std::string& body) const {
  Json doc;
  if (auto bad = CheckBody(body, "response", false, doc)) return *bad;
  const double score =
      ScoreText(doc["requirements"].get<std::vector<std::string>>(),
                doc["response"].get<std::string>());
  return {200, {{"score", score}}};
}

HttpReply MockScoreServer::HandleBatch(const std::string& body) const {
  Json doc;
  if (auto bad = CheckBody(body, "responses", true, doc)) return *bad;
  const auto responses = doc["responses"].get<std::vector<std::string>>();
  if (responses.empty()) return BadRequest("'responses' must not be empty");
  if (responses.size() > options_.max_batch_size) {
    return {413,
            {{"error", "batch of " + std::to_string(responses.size()) +
                           " exceeds max_batch_size " +
                           std::to_string(options_.max_batch_size)}}};
  }
  const auto requirements = doc["requirements"].get<std::vector<std::string>>();
  Json scores = Json::array();
  for (const auto& r : responses) scores.push_back(ScoreText(requirements, r));
  return {200, {{"scores", scores}}};
}

}  // namespace reqdrop
