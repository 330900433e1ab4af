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

#ifndef REQDROP_HARNESS_CONFIG_H_
#define REQDROP_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "reqdrop/bt.h"
#include "reqdrop/corpus.h"
#include "reqdrop/dropout.h"
#include "reqdrop/harness/retry.h"
#include "reqdrop/jsonl.h"
#include "reqdrop/scorers.h"

namespace reqdrop {

// One backend endpoint. `type` selects the client:
//   chat:       "mock" (synthetic), "echo", "http" (chat completions)
//   embedding:  "mock" (hashed bag of words), "http"
//   scorer:     "oracle", "mock", "judge", "remote"
// Secrets never live in the document; `api_key_env` names the variable.
struct BackendConfig {
  std::string type = "mock";
  std::string url;
  std::string model;
  std::string api_key_env;
  int timeout_seconds = 120;
  int delay_ms = 0;        // mock chat latency
  int dimension = 64;      // mock embedding width
  int batch_size = 32;     // embedding chunk size
  double default_score = 0.5;  // mock scorer
};

struct RunConfig {
  BackendConfig embedding;
  BackendConfig generation;
  std::optional<BackendConfig> augmentation;  // defaults to `generation`
  BackendConfig judge;
  BackendConfig scorer = [] {
    BackendConfig b;
    b.type = "oracle";
    return b;
  }();

  int n_requirements = 5;
  DropoutMode dropout_mode = DropoutMode::kNested;
  uint64_t rng_seed = 0;
  bool shuffle_candidates = true;
  int concurrency = 4;
  RetryPolicy retry;
  std::string cache_dir = ".reqdrop-cache";
  SelectionPolicy selection;

  double temperature = 0.0;
  int max_tokens = 2048;
  int max_attempts = 3;
  std::string constraint_template;  // empty = builtin
  std::string judge_template;       // empty = builtin

  PairingMode pairing = PairingMode::kChosenVsEachRejected;
  TrainOptions train;

  const BackendConfig& augmentation_backend() const {
    return augmentation ? *augmentation : generation;
  }
};

// Relative template paths are resolved against `base_dir`. Unknown keys are
// configuration errors.
RunConfig ConfigFromJson(const Json& doc, const std::string& base_dir = "");
RunConfig LoadConfig(const std::string& path);
void ValidateConfig(const RunConfig& config);

Json ToJson(const RunConfig& config);

// Digest of the output-affecting fields. Cache location and concurrency are
// excluded so that runs differing only in those share provenance; templates
// contribute their name and content digest rather than their path.
std::string ConfigHash(const RunConfig& config);

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_CONFIG_H_
