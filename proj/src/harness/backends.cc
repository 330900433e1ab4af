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

#include "reqdrop/harness/backends.h"

#include <cctype>
#include <chrono>
#include <ctime>
#include <thread>

#include "reqdrop/error.h"
#include "reqdrop/harness/http.h"
#include "reqdrop/harness/log.h"
#include "reqdrop/harness/synthetic.h"

namespace reqdrop {
namespace {

std::string NowIso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

const std::string& LastUserMessage(const ChatRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == "user") return it->content;
  }
  Fail(ErrorKind::kPrecondition, "chat request has no user message");
}

int64_t ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Retry loop shared by the cached clients: TransportError is retried with
// backoff, everything else propagates at once.
template <typename Fn>
auto WithRetries(const RetryPolicy& retry, const std::string& key,
                 std::string_view what, Fn fn) -> decltype(fn()) {
  const int attempts = std::max(1, retry.max_attempts);
  for (int attempt = 0;; ++attempt) {
    try {
      return fn();
    } catch (const TransportError& e) {
      log::Warning("backend_retry", {{"request_hash", key},
                                     {"backend_call", what},
                                     {"attempt", attempt + 1},
                                     {"error", e.what()}});
      if (attempt + 1 >= attempts) {
        throw TransportError(std::string(e.what()) + " [request " + key + "]",
                             key);
      }
      std::this_thread::sleep_for(retry.Backoff(attempt, key));
    }
  }
}

}  // namespace

ChatCompletionsClient::ChatCompletionsClient(std::string url,
                                             std::string api_key_env,
                                             int timeout_seconds)
    : url_(std::move(url)),
      api_key_env_(std::move(api_key_env)),
      timeout_seconds_(timeout_seconds) {}

std::string ChatCompletionsClient::Complete(const ChatRequest& request) {
  const Json body = http::PostJson(url_, request.ToJson(),
                                   http::BearerFromEnv(api_key_env_),
                                   timeout_seconds_);
  try {
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const Json::exception&) {
    throw TransportError("chat reply from " + url_ + " lacks choices[0].message.content", "");
  }
}

HttpEmbeddingClient::HttpEmbeddingClient(std::string url, std::string model,
                                         std::string api_key_env,
                                         int timeout_seconds)
    : url_(std::move(url)),
      model_(std::move(model)),
      api_key_env_(std::move(api_key_env)),
      timeout_seconds_(timeout_seconds) {}

std::vector<std::vector<double>> HttpEmbeddingClient::Embed(
    const std::vector<std::string>& texts) {
  const Json body = http::PostJson(url_, {{"input", texts}, {"model", model_}},
                                   http::BearerFromEnv(api_key_env_),
                                   timeout_seconds_);
  std::vector<std::vector<double>> out;
  try {
    const Json& data = body.at("data");
    out.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
      // Hosted APIs tag each row with its input index; honor it when present.
      const size_t slot = data[i].contains("index")
                              ? data[i]["index"].get<size_t>()
                              : i;
      if (slot >= out.size()) throw TransportError("embedding index out of range", "");
      out[slot] = data[i].at("embedding").get<std::vector<double>>();
    }
  } catch (const Json::exception&) {
    throw TransportError("embedding reply from " + url_ + " is malformed", "");
  }
  return out;
}

HashEmbeddingClient::HashEmbeddingClient(int dimension) : dimension_(dimension) {
  Require(dimension >= 2, "hash embedding dimension must be >= 2");
}

std::vector<std::vector<double>> HashEmbeddingClient::Embed(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    std::vector<double> v(dimension_, 0.0);
    std::string word;
    bool any = false;
    auto flush = [&] {
      if (word.empty()) return;
      const uint64_t h = Fnv1a(word);
      v[h % dimension_] += (h >> 63) ? -1.0 : 1.0;
      any = true;
      word.clear();
    };
    for (unsigned char ch : text) {
      if (std::isalnum(ch)) {
        word.push_back(static_cast<char>(std::tolower(ch)));
      } else {
        flush();
      }
    }
    flush();
    if (!any) v[Fnv1a(text) % dimension_] = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

SyntheticChatClient::SyntheticChatClient(uint64_t seed, int delay_ms)
    : seed_(seed), delay_ms_(delay_ms) {}

std::string SyntheticChatClient::Complete(const ChatRequest& request) {
  ++calls_;
  if (delay_ms_ > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
  }
  const std::string& prompt = LastUserMessage(request);
  // The constraint prompt is the first user turn; re-prompts come after it.
  const std::string& first = request.messages.front().content;
  if (first.find("[Seed Question]") != std::string::npos) {
    return synthetic::ConstraintReply(first, seed_);
  }
  return synthetic::TemplateResponse(prompt);
}

std::string EchoChatClient::Complete(const ChatRequest& request) {
  return LastUserMessage(request);
}

CachedChatClient::CachedChatClient(ChatClient& inner, CallCache& cache,
                                   RetryPolicy retry)
    : inner_(inner), cache_(cache), retry_(retry) {}

std::string CachedChatClient::RequestHash(const ChatRequest& request) const {
  return CacheKey({{"kind", "chat"},
                   {"backend", inner_.backend_id()},
                   {"request", request.ToJson()}});
}

std::string CachedChatClient::Complete(const ChatRequest& request) {
  const std::string key = RequestHash(request);
  if (auto hit = cache_.Get(key)) {
    log::Debug("chat_cache_hit", {{"request_hash", key}});
    return hit->value.get<std::string>();
  }
  return WithRetries(retry_, key, "chat", [&] {
    const auto start = std::chrono::steady_clock::now();
    ++backend_calls_;
    std::string content = inner_.Complete(request);
    const int64_t latency = ElapsedMs(start);
    cache_.Put({key, content, NowIso8601(), inner_.backend_id(), latency});
    log::Info("chat_call", {{"request_hash", key},
                            {"backend", inner_.backend_id()},
                            {"model", request.model},
                            {"latency_ms", latency}});
    return content;
  });
}

CachedEmbeddingClient::CachedEmbeddingClient(EmbeddingClient& inner,
                                             CallCache& cache, RetryPolicy retry,
                                             int batch_size)
    : inner_(inner),
      cache_(cache),
      retry_(retry),
      batch_size_(std::max(1, batch_size)) {}

std::vector<std::vector<double>> CachedEmbeddingClient::Embed(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (size_t begin = 0; begin < texts.size(); begin += batch_size_) {
    const size_t end = std::min(texts.size(), begin + batch_size_);
    const std::vector<std::string> chunk(texts.begin() + begin,
                                         texts.begin() + end);
    const std::string key = CacheKey({{"kind", "embed"},
                                      {"backend", inner_.backend_id()},
                                      {"model", inner_.model()},
                                      {"input", chunk}});
    std::vector<std::vector<double>> vectors;
    if (auto hit = cache_.Get(key)) {
      vectors = hit->value.get<std::vector<std::vector<double>>>();
    } else {
      vectors = WithRetries(retry_, key, "embed", [&] {
        const auto start = std::chrono::steady_clock::now();
        ++backend_calls_;
        auto result = inner_.Embed(chunk);
        const int64_t latency = ElapsedMs(start);
        cache_.Put({key, result, NowIso8601(), inner_.backend_id(), latency});
        log::Info("embed_call", {{"request_hash", key},
                                 {"backend", inner_.backend_id()},
                                 {"texts", chunk.size()},
                                 {"latency_ms", latency}});
        return result;
      });
    }
    for (auto& v : vectors) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace reqdrop
