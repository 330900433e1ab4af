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

#include "reqdrop/clients.h"

namespace reqdrop {

Json ChatRequest::ToJson() const {
  Json messages_json = Json::array();
  for (const auto& m : messages) {
    messages_json.push_back({{"role", m.role}, {"content", m.content}});
  }
  return {{"model", model},
          {"messages", messages_json},
          {"temperature", temperature},
          {"max_tokens", max_tokens}};
}

}  // namespace reqdrop
