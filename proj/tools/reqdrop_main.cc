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

// reqdrop: requirement-dropout reward-model evaluation pipeline.
//
// Every stage prints one JSON summary object on stdout. Failures print a
// JSON error report on stderr and exit non-zero (3 for transport failures).

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "reqdrop/error.h"
#include "reqdrop/harness/config.h"
#include "reqdrop/harness/log.h"
#include "reqdrop/harness/mock_score_server.h"
#include "reqdrop/harness/pipeline.h"
#include "reqdrop/harness/reward_service.h"

namespace {

using reqdrop::Json;

std::atomic<bool> g_stop{false};

void OnSignal(int) { g_stop = true; }

void ServeUntilSignal(reqdrop::HttpService& service, const std::string& host,
                      int port) {
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  service.Start(host, port);
  std::cout << Json{{"event", "listening"}, {"host", host}, {"port", service.port()}}
                   .dump()
            << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  service.Stop();
  reqdrop::log::Info("shutdown", {{"port", service.port()}});
}

void ReportError(const std::string& kind, const std::string& message,
                 const std::string& request_hash = "") {
  Json report = {{"error", kind}, {"message", message}};
  if (!request_hash.empty()) report["request_hash"] = request_hash;
  std::cerr << report.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Requirement-dropout reward-model evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string cache_dir;
  int concurrency = 0;
  std::optional<uint64_t> seed;
  bool dry_run = false;
  std::string log_file;
  std::string log_level = "warning";
  app.add_option("--config", config_path, "Run configuration (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--cache-dir", cache_dir, "Call cache directory");
  app.add_option("--concurrency", concurrency, "Max in-flight backend calls")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Overrides the configured rng_seed");
  app.add_flag("--dry-run", dry_run, "Count work without calling backends");
  app.add_option("--log-file", log_file, "JSON-lines log sink; '-' disables");
  app.add_option("--log-level", log_level, "debug, info, warning or error")
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}));

  std::string candidates, prototypes, seeds, queries, dataset, pairs, out;
  std::string prototypes_out, eval_dataset, table, host = "127.0.0.1";
  std::vector<std::string> scores;
  int per_category = 12, prototypes_per_category = 4, port = 8080;
  std::string mock_mode = "oracle";
  double constant = 0.5;
  size_t max_batch = 16;

  auto* synth = app.add_subcommand("synth-seeds", "Write a synthetic seed corpus");
  synth->add_option("--per-category", per_category)->check(CLI::PositiveNumber);
  synth->add_option("--prototypes-per-category", prototypes_per_category)
      ->check(CLI::PositiveNumber);
  synth->add_option("--candidates-out", out)->required();
  synth->add_option("--prototypes-out", prototypes_out)->required();

  auto* build = app.add_subcommand("build-seeds", "Categorize candidate seeds");
  build->add_option("--candidates", candidates)->required()->check(CLI::ExistingFile);
  build->add_option("--prototypes", prototypes)->required()->check(CLI::ExistingFile);
  build->add_option("--out", out)->required();

  auto* augment = app.add_subcommand("augment", "Attach requirements to seeds");
  augment->add_option("--seeds", seeds)->required()->check(CLI::ExistingFile);
  augment->add_option("--out", out)->required();

  auto* gen = app.add_subcommand("gen-candidates", "Generate dropout candidates");
  gen->add_option("--queries", queries)->required()->check(CLI::ExistingFile);
  gen->add_option("--out", out)->required();

  auto* eval = app.add_subcommand("eval-rm", "Score every candidate");
  eval->add_option("--dataset", dataset)->required()->check(CLI::ExistingFile);
  eval->add_option("--out", out)->required();

  auto* export_bt = app.add_subcommand("export-bt", "Write preference pairs");
  export_bt->add_option("--dataset", dataset)->required()->check(CLI::ExistingFile);
  export_bt->add_option("--out", out)->required();

  auto* train = app.add_subcommand("train-toy-bt", "Fit the linear BT model");
  train->add_option("--pairs", pairs)->required()->check(CLI::ExistingFile);
  train->add_option("--out", out)->required();
  train->add_option("--eval-dataset", eval_dataset)->check(CLI::ExistingFile);

  auto* report = app.add_subcommand("report", "Aggregate metrics per scorer");
  report->add_option("--dataset", dataset)->required()->check(CLI::ExistingFile);
  report->add_option("--scores", scores)->required()->check(CLI::ExistingFile);
  report->add_option("--out", out)->required();
  report->add_option("--table", table, "Also write the rendered table here");

  auto* serve = app.add_subcommand("serve-rewards", "Serve group rewards");
  serve->add_option("--host", host);
  serve->add_option("--port", port, "0 picks a free port")
      ->check(CLI::Range(0, 65535));

  auto* mock = app.add_subcommand("serve-mock-scorer",
                                  "Serve the reference RemoteScalar protocol");
  mock->add_option("--host", host);
  mock->add_option("--port", port, "0 picks a free port")
      ->check(CLI::Range(0, 65535));
  mock->add_option("--mode", mock_mode)
      ->check(CLI::IsMember({"oracle", "constant"}));
  mock->add_option("--constant", constant);
  mock->add_option("--max-batch", max_batch)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    reqdrop::log::SetSink(log_file);
    const std::map<std::string, reqdrop::log::Level> levels = {
        {"debug", reqdrop::log::Level::kDebug},
        {"info", reqdrop::log::Level::kInfo},
        {"warning", reqdrop::log::Level::kWarning},
        {"error", reqdrop::log::Level::kError}};
    reqdrop::log::SetLevel(levels.at(log_level));

    reqdrop::StageContext ctx;
    if (!config_path.empty()) ctx.config = reqdrop::LoadConfig(config_path);
    if (!cache_dir.empty()) ctx.config.cache_dir = cache_dir;
    if (concurrency > 0) ctx.config.concurrency = concurrency;
    if (seed) {
      ctx.config.rng_seed = *seed;
      ctx.config.retry.seed = *seed;
      ctx.config.train.rng_seed = *seed;
    }
    reqdrop::ValidateConfig(ctx.config);
    ctx.dry_run = dry_run;

    if (*mock) {
      reqdrop::MockScoreOptions options;
      options.mode = mock_mode == "constant"
                         ? reqdrop::MockScoreOptions::Mode::kConstant
                         : reqdrop::MockScoreOptions::Mode::kOracle;
      options.constant = constant;
      options.max_batch_size = max_batch;
      reqdrop::MockScoreServer server(options);
      ServeUntilSignal(server, host, port);
      return 0;
    }
    if (*serve) {
      reqdrop::Backends backends(ctx.config);
      reqdrop::RewardService service(backends.scorer());
      ServeUntilSignal(service, host, port);
      return 0;
    }

    Json summary;
    if (*synth) {
      summary = reqdrop::RunSynthSeeds(ctx, per_category, prototypes_per_category,
                                       out, prototypes_out);
    } else if (*build) {
      summary = reqdrop::RunBuildSeeds(ctx, candidates, prototypes, out);
    } else if (*augment) {
      summary = reqdrop::RunAugment(ctx, seeds, out);
    } else if (*gen) {
      summary = reqdrop::RunGenCandidates(ctx, queries, out);
    } else if (*eval) {
      summary = reqdrop::RunEvalRm(ctx, dataset, out);
    } else if (*export_bt) {
      summary = reqdrop::RunExportBt(ctx, dataset, out);
    } else if (*train) {
      summary = reqdrop::RunTrainToyBt(ctx, pairs, out, eval_dataset);
    } else if (*report) {
      summary = reqdrop::RunReport(ctx, dataset, scores, out, table);
      std::cerr << summary["table"].get<std::string>();
    }
    std::cout << summary.dump() << std::endl;
    return 0;
  } catch (const reqdrop::TransportError& e) {
    ReportError("transport", e.what(), e.request_hash());
    return 3;
  } catch (const reqdrop::Error& e) {
    ReportError(std::string(reqdrop::ErrorKindName(e.kind())), e.what());
    return 1;
  } catch (const std::exception& e) {
    ReportError("internal", e.what());
    return 1;
  }
}
