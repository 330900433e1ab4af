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

#include "reqdrop/harness/config.h"

#include <filesystem>
#include <initializer_list>
#include <set>

#include "reqdrop/error.h"
#include "reqdrop/hash.h"
#include "reqdrop/templates.h"

namespace reqdrop {
namespace {

namespace fs = std::filesystem;

void CheckKeys(const Json& obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    Fail(ErrorKind::kConfig, std::string(where) + " must be an object");
  }
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      Fail(ErrorKind::kConfig,
           "unknown config key '" + std::string(where) + "." + key + "'");
    }
  }
}

template <typename T>
void Read(const Json& obj, std::string_view where, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const Json::exception&) {
    Fail(ErrorKind::kConfig, "config key '" + std::string(where) + "." + key +
                                 "' has the wrong type");
  }
}

BackendConfig BackendFromJson(const Json& obj, const std::string& where) {
  CheckKeys(obj, where,
            {"type", "url", "model", "api_key_env", "timeout_seconds",
             "delay_ms", "dimension", "batch_size", "default_score"});
  BackendConfig b;
  Read(obj, where, "type", b.type);
  Read(obj, where, "url", b.url);
  Read(obj, where, "model", b.model);
  Read(obj, where, "api_key_env", b.api_key_env);
  Read(obj, where, "timeout_seconds", b.timeout_seconds);
  Read(obj, where, "delay_ms", b.delay_ms);
  Read(obj, where, "dimension", b.dimension);
  Read(obj, where, "batch_size", b.batch_size);
  Read(obj, where, "default_score", b.default_score);
  return b;
}

Json BackendToJson(const BackendConfig& b) {
  return {{"type", b.type},
          {"url", b.url},
          {"model", b.model},
          {"api_key_env", b.api_key_env},
          {"timeout_seconds", b.timeout_seconds},
          {"delay_ms", b.delay_ms},
          {"dimension", b.dimension},
          {"batch_size", b.batch_size},
          {"default_score", b.default_score}};
}

std::string PairingName(PairingMode mode) {
  return mode == PairingMode::kAllPairs ? "all_pairs" : "chosen_vs_each_rejected";
}

void ValidateBackend(const BackendConfig& b, const std::string& role,
                     std::initializer_list<std::string_view> types) {
  bool known = false;
  for (auto t : types) known = known || b.type == t;
  if (!known) {
    Fail(ErrorKind::kConfig,
         "backend '" + role + "' has unsupported type '" + b.type + "'");
  }
  if ((b.type == "http" || b.type == "remote") && b.url.empty()) {
    Fail(ErrorKind::kConfig, "backend '" + role + "' needs a url");
  }
  if (b.timeout_seconds < 1 || b.delay_ms < 0 || b.dimension < 1 ||
      b.batch_size < 1) {
    Fail(ErrorKind::kConfig, "backend '" + role + "' has an out-of-range limit");
  }
}

}  // namespace

RunConfig ConfigFromJson(const Json& doc, const std::string& base_dir) {
  CheckKeys(doc, "config",
            {"backends", "n_requirements", "dropout", "concurrency", "retry",
             "cache_dir", "selection", "generation_options", "templates", "bt"});
  RunConfig c;
  if (doc.contains("backends")) {
    const Json& b = doc["backends"];
    CheckKeys(b, "backends",
              {"embedding", "generation", "augmentation", "judge", "scorer"});
    if (b.contains("embedding")) c.embedding = BackendFromJson(b["embedding"], "backends.embedding");
    if (b.contains("generation")) c.generation = BackendFromJson(b["generation"], "backends.generation");
    if (b.contains("augmentation")) c.augmentation = BackendFromJson(b["augmentation"], "backends.augmentation");
    if (b.contains("judge")) c.judge = BackendFromJson(b["judge"], "backends.judge");
    if (b.contains("scorer")) {
      BackendConfig scorer = BackendFromJson(b["scorer"], "backends.scorer");
      if (!b["scorer"].contains("type")) scorer.type = "oracle";
      c.scorer = scorer;
    }
  }
  Read(doc, "config", "n_requirements", c.n_requirements);
  Read(doc, "config", "concurrency", c.concurrency);
  Read(doc, "config", "cache_dir", c.cache_dir);
  if (doc.contains("dropout")) {
    const Json& d = doc["dropout"];
    CheckKeys(d, "dropout", {"mode", "rng_seed", "shuffle_candidates"});
    std::string mode(DropoutModeName(c.dropout_mode));
    Read(d, "dropout", "mode", mode);
    try {
      c.dropout_mode = ParseDropoutMode(mode);
    } catch (const Error& e) {
      Fail(ErrorKind::kConfig, e.what());
    }
    Read(d, "dropout", "rng_seed", c.rng_seed);
    Read(d, "dropout", "shuffle_candidates", c.shuffle_candidates);
  }
  if (doc.contains("retry")) {
    const Json& r = doc["retry"];
    CheckKeys(r, "retry", {"max_attempts", "base_backoff_ms", "jitter"});
    Read(r, "retry", "max_attempts", c.retry.max_attempts);
    Read(r, "retry", "base_backoff_ms", c.retry.base_backoff_ms);
    Read(r, "retry", "jitter", c.retry.jitter);
  }
  if (doc.contains("selection")) {
    const Json& s = doc["selection"];
    CheckKeys(s, "selection", {"mode", "k", "tau"});
    std::string mode = "top_k";
    Read(s, "selection", "mode", mode);
    if (mode == "top_k") {
      c.selection = SelectionPolicy::TopK(c.selection.k);
      Read(s, "selection", "k", c.selection.k);
    } else if (mode == "threshold") {
      c.selection = SelectionPolicy::Threshold(0.0);
      Read(s, "selection", "tau", c.selection.tau);
    } else {
      Fail(ErrorKind::kConfig, "unknown selection mode '" + mode + "'");
    }
  }
  if (doc.contains("generation_options")) {
    const Json& g = doc["generation_options"];
    CheckKeys(g, "generation_options", {"temperature", "max_tokens", "max_attempts"});
    Read(g, "generation_options", "temperature", c.temperature);
    Read(g, "generation_options", "max_tokens", c.max_tokens);
    Read(g, "generation_options", "max_attempts", c.max_attempts);
  }
  if (doc.contains("templates")) {
    const Json& t = doc["templates"];
    CheckKeys(t, "templates", {"constraint", "judge"});
    Read(t, "templates", "constraint", c.constraint_template);
    Read(t, "templates", "judge", c.judge_template);
    for (std::string* path : {&c.constraint_template, &c.judge_template}) {
      if (!path->empty() && fs::path(*path).is_relative() && !base_dir.empty()) {
        *path = (fs::path(base_dir) / *path).string();
      }
    }
  }
  if (doc.contains("bt")) {
    const Json& b = doc["bt"];
    CheckKeys(b, "bt", {"pairing", "lr", "epochs", "l2", "init_scale"});
    std::string pairing = PairingName(c.pairing);
    Read(b, "bt", "pairing", pairing);
    if (pairing == "all_pairs") {
      c.pairing = PairingMode::kAllPairs;
    } else if (pairing == "chosen_vs_each_rejected") {
      c.pairing = PairingMode::kChosenVsEachRejected;
    } else {
      Fail(ErrorKind::kConfig, "unknown bt pairing '" + pairing + "'");
    }
    Read(b, "bt", "lr", c.train.lr);
    Read(b, "bt", "epochs", c.train.epochs);
    Read(b, "bt", "l2", c.train.l2);
    Read(b, "bt", "init_scale", c.train.init_scale);
  }
  c.retry.seed = c.rng_seed;
  c.train.rng_seed = c.rng_seed;
  ValidateConfig(c);
  return c;
}

RunConfig LoadConfig(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(ReadFile(path));
  } catch (const Json::parse_error& e) {
    Fail(ErrorKind::kConfig, path + ": " + e.what());
  }
  return ConfigFromJson(doc, fs::path(path).parent_path().string());
}

void ValidateConfig(const RunConfig& c) {
  if (c.n_requirements < 2) Fail(ErrorKind::kConfig, "n_requirements must be >= 2");
  if (c.concurrency < 1) Fail(ErrorKind::kConfig, "concurrency must be >= 1");
  if (c.retry.max_attempts < 1 || c.retry.base_backoff_ms < 0) {
    Fail(ErrorKind::kConfig, "retry policy is out of range");
  }
  if (c.selection.mode == SelectionPolicy::Mode::kTopK && c.selection.k < 1) {
    Fail(ErrorKind::kConfig, "selection.k must be >= 1");
  }
  if (c.max_tokens < 1 || c.max_attempts < 1) {
    Fail(ErrorKind::kConfig, "generation_options limits must be >= 1");
  }
  if (!(c.train.lr > 0.0) || c.train.epochs < 0 || c.train.l2 < 0.0) {
    Fail(ErrorKind::kConfig, "bt options are out of range");
  }
  ValidateBackend(c.embedding, "embedding", {"mock", "http"});
  ValidateBackend(c.generation, "generation", {"mock", "echo", "http"});
  if (c.augmentation) {
    ValidateBackend(*c.augmentation, "augmentation", {"mock", "echo", "http"});
  }
  ValidateBackend(c.judge, "judge", {"mock", "echo", "http"});
  ValidateBackend(c.scorer, "scorer", {"oracle", "mock", "judge", "remote"});
  for (const std::string& path : {c.constraint_template, c.judge_template}) {
    if (!path.empty() && !FileExists(path)) {
      Fail(ErrorKind::kConfig, "template file '" + path + "' does not exist");
    }
  }
}

Json ToJson(const RunConfig& c) {
  Json backends = {{"embedding", BackendToJson(c.embedding)},
                   {"generation", BackendToJson(c.generation)},
                   {"judge", BackendToJson(c.judge)},
                   {"scorer", BackendToJson(c.scorer)}};
  if (c.augmentation) backends["augmentation"] = BackendToJson(*c.augmentation);
  Json selection =
      c.selection.mode == SelectionPolicy::Mode::kTopK
          ? Json{{"mode", "top_k"}, {"k", c.selection.k}}
          : Json{{"mode", "threshold"}, {"tau", c.selection.tau}};
  Json templates = Json::object();
  if (!c.constraint_template.empty()) templates["constraint"] = c.constraint_template;
  if (!c.judge_template.empty()) templates["judge"] = c.judge_template;
  return {{"backends", backends},
          {"n_requirements", c.n_requirements},
          {"dropout",
           {{"mode", DropoutModeName(c.dropout_mode)},
            {"rng_seed", c.rng_seed},
            {"shuffle_candidates", c.shuffle_candidates}}},
          {"concurrency", c.concurrency},
          {"retry",
           {{"max_attempts", c.retry.max_attempts},
            {"base_backoff_ms", c.retry.base_backoff_ms},
            {"jitter", c.retry.jitter}}},
          {"cache_dir", c.cache_dir},
          {"selection", selection},
          {"generation_options",
           {{"temperature", c.temperature},
            {"max_tokens", c.max_tokens},
            {"max_attempts", c.max_attempts}}},
          {"templates", templates},
          {"bt",
           {{"pairing", PairingName(c.pairing)},
            {"lr", c.train.lr},
            {"epochs", c.train.epochs},
            {"l2", c.train.l2},
            {"init_scale", c.train.init_scale}}}};
}

std::string ConfigHash(const RunConfig& config) {
  Json doc = ToJson(config);
  doc.erase("cache_dir");
  doc.erase("concurrency");
  auto digest = [](const std::string& path, const PromptTemplate& builtin) {
    const PromptTemplate tpl = path.empty() ? builtin : LoadTemplate(path);
    return tpl.name + "@" + tpl.Digest();
  };
  doc["templates"] = {
      {"constraint", digest(config.constraint_template, BuiltinConstraintTemplate())},
      {"judge", digest(config.judge_template, BuiltinJudgeTemplate())}};
  return Sha256Hex(doc.dump()).substr(0, 16);
}

}  // namespace reqdrop
