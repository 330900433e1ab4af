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

#ifndef REQDROP_HARNESS_BACKENDS_H_
#define REQDROP_HARNESS_BACKENDS_H_

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "reqdrop/clients.h"
#include "reqdrop/harness/cache.h"
#include "reqdrop/harness/retry.h"

namespace reqdrop {

// POST {model, messages, temperature, max_tokens} to a chat-completions
// endpoint; returns choices[0].message.content.
class ChatCompletionsClient : public ChatClient {
 public:
  ChatCompletionsClient(std::string url, std::string api_key_env,
                        int timeout_seconds = 120);
  std::string Complete(const ChatRequest& request) override;
  std::string backend_id() const override { return "http:" + url_; }

 private:
  std::string url_;
  std::string api_key_env_;
  int timeout_seconds_;
};

// POST {"input": [...], "model": m} -> {"data": [{"embedding": [...]}]}.
class HttpEmbeddingClient : public EmbeddingClient {
 public:
  HttpEmbeddingClient(std::string url, std::string model,
                      std::string api_key_env, int timeout_seconds = 60);
  std::vector<std::vector<double>> Embed(
      const std::vector<std::string>& texts) override;
  std::string backend_id() const override { return "http:" + url_; }
  std::string model() const override { return model_; }

 private:
  std::string url_;
  std::string model_;
  std::string api_key_env_;
  int timeout_seconds_;
};

// Deterministic feature-hashing embedder: lowercased words with ASCII
// punctuation stripped, each hashed into a signed bucket. Texts sharing words
// land close together, which is enough for centroid filtering in tests.
class HashEmbeddingClient : public EmbeddingClient {
 public:
  explicit HashEmbeddingClient(int dimension = 64);
  std::vector<std::vector<double>> Embed(
      const std::vector<std::string>& texts) override;
  std::string backend_id() const override { return "mock-hash"; }
  std::string model() const override {
    return "hash-" + std::to_string(dimension_);
  }

 private:
  int dimension_;
};

// Offline generator for closed-loop runs. A constraint-generation prompt gets
// a JSON reply of synthetic checkable constraints seeded by the question; any
// other prompt gets a templated response that satisfies exactly the checkable
// requirements listed in it.
class SyntheticChatClient : public ChatClient {
 public:
  explicit SyntheticChatClient(uint64_t seed = 0, int delay_ms = 0);
  std::string Complete(const ChatRequest& request) override;
  std::string backend_id() const override { return "mock-synthetic"; }
  size_t calls() const { return calls_.load(); }

 private:
  uint64_t seed_;
  int delay_ms_;
  std::atomic<size_t> calls_{0};
};

// Returns the last user message verbatim.
class EchoChatClient : public ChatClient {
 public:
  std::string Complete(const ChatRequest& request) override;
  std::string backend_id() const override { return "mock-echo"; }
};

// Adds the content-addressed cache and transport retries to a chat backend.
// The request hash covers the backend id and the canonical request.
class CachedChatClient : public ChatClient {
 public:
  CachedChatClient(ChatClient& inner, CallCache& cache, RetryPolicy retry);
  std::string Complete(const ChatRequest& request) override;
  std::string backend_id() const override { return inner_.backend_id(); }

  std::string RequestHash(const ChatRequest& request) const;
  size_t backend_calls() const { return backend_calls_.load(); }

 private:
  ChatClient& inner_;
  CallCache& cache_;
  RetryPolicy retry_;
  std::atomic<size_t> backend_calls_{0};
};

// Same for embeddings; requests are split into chunks of `batch_size` texts
// and each chunk is cached separately.
class CachedEmbeddingClient : public EmbeddingClient {
 public:
  CachedEmbeddingClient(EmbeddingClient& inner, CallCache& cache,
                        RetryPolicy retry, int batch_size = 32);
  std::vector<std::vector<double>> Embed(
      const std::vector<std::string>& texts) override;
  std::string backend_id() const override { return inner_.backend_id(); }
  std::string model() const override { return inner_.model(); }
  size_t backend_calls() const { return backend_calls_.load(); }

 private:
  EmbeddingClient& inner_;
  CallCache& cache_;
  RetryPolicy retry_;
  int batch_size_;
  std::atomic<size_t> backend_calls_{0};
};

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_BACKENDS_H_
