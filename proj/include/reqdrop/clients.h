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

#ifndef REQDROP_CLIENTS_H_
#define REQDROP_CLIENTS_H_

#include <string>
#include <vector>

#include "reqdrop/jsonl.h"

namespace reqdrop {

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 2048;

  // Canonical encoding; prompts are hashed verbatim.
  Json ToJson() const;
};

// Anything that speaks the chat-completions contract: one request in, the
// assistant message content out. Implementations throw TransportError on
// connection or protocol failures so callers can retry.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string Complete(const ChatRequest& request) = 0;
  virtual std::string backend_id() const = 0;
};

class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  // One vector per input, in order.
  virtual std::vector<std::vector<double>> Embed(
      const std::vector<std::string>& texts) = 0;
  virtual std::string backend_id() const = 0;
  virtual std::string model() const = 0;
};

}  // namespace reqdrop

#endif  // REQDROP_CLIENTS_H_
