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

#include "reqdrop/harness/pipeline.h"

#include <map>
#include <memory>
#include <set>

#include "reqdrop/error.h"
#include "reqdrop/harness/concurrency.h"
#include "reqdrop/harness/log.h"
#include "reqdrop/harness/synthetic.h"
#include "reqdrop/rng.h"

namespace reqdrop {
namespace {

std::string ModelLabel(const BackendConfig& b) {
  if (!b.model.empty()) return b.model;
  return b.type == "mock" ? "mock-synthetic" : b.type;
}

GenerationOptions OptionsFor(const BackendConfig& b, const RunConfig& config) {
  GenerationOptions options;
  options.model = ModelLabel(b);
  options.temperature = config.temperature;
  options.max_tokens = config.max_tokens;
  options.max_attempts = config.max_attempts;
  return options;
}

void WriteJsonl(const std::string& path, const std::vector<Json>& records) {
  WriteFileAtomic(path, DumpJsonl(records));
}

Json CacheStats(Backends& backends) {
  return {{"backend_calls", backends.backend_calls()},
          {"cache_hits", backends.cache().hits()},
          {"cache_misses", backends.cache().misses()}};
}

Json Summary(std::string_view stage, const StageContext& ctx) {
  return {{"stage", stage},
          {"dry_run", ctx.dry_run},
          {"config_hash", ConfigHash(ctx.config)}};
}

Json DryRunCounts(size_t requests, size_t cached) {
  return {{"requests", requests}, {"cached", cached}};
}

ChatRequest FirstConstraintRequest(const SeedInstruction& seed,
                                   const RunConfig& config,
                                   const GenerationOptions& options) {
  ChatRequest request;
  request.model = options.model;
  request.temperature = options.temperature;
  request.max_tokens = options.max_tokens;
  request.messages.push_back(
      {"user", RenderConstraintPrompt(ConstraintTemplateOf(config), seed.text,
                                      config.n_requirements)});
  return request;
}

}  // namespace

Backends::Backends(const RunConfig& config)
    : config_(config), cache_(config.cache_dir) {}

Backends::~Backends() = default;

std::unique_ptr<ChatClient> Backends::MakeChat(const BackendConfig& b) const {
  if (b.type == "mock") {
    return std::make_unique<SyntheticChatClient>(config_.rng_seed, b.delay_ms);
  }
  if (b.type == "echo") return std::make_unique<EchoChatClient>();
  if (b.type == "http") {
    return std::make_unique<ChatCompletionsClient>(b.url, b.api_key_env,
                                                   b.timeout_seconds);
  }
  Fail(ErrorKind::kConfig, "unsupported chat backend '" + b.type + "'");
}

CachedChatClient& Backends::generation() {
  if (!generation_) {
    generation_raw_ = MakeChat(config_.generation);
    generation_ = std::make_unique<CachedChatClient>(*generation_raw_, cache_,
                                                     config_.retry);
  }
  return *generation_;
}

CachedChatClient& Backends::augmentation() {
  if (!config_.augmentation) return generation();
  if (!augmentation_) {
    augmentation_raw_ = MakeChat(*config_.augmentation);
    augmentation_ = std::make_unique<CachedChatClient>(*augmentation_raw_,
                                                       cache_, config_.retry);
  }
  return *augmentation_;
}

CachedEmbeddingClient& Backends::embedding() {
  if (!embedding_) {
    const BackendConfig& b = config_.embedding;
    if (b.type == "mock") {
      embedding_raw_ = std::make_unique<HashEmbeddingClient>(b.dimension);
    } else {
      embedding_raw_ = std::make_unique<HttpEmbeddingClient>(
          b.url, b.model, b.api_key_env, b.timeout_seconds);
    }
    embedding_ = std::make_unique<CachedEmbeddingClient>(
        *embedding_raw_, cache_, config_.retry, b.batch_size);
  }
  return *embedding_;
}

CachedScorer& Backends::scorer() {
  if (!scorer_) {
    if (config_.scorer.type == "judge") {
      judge_raw_ = MakeChat(config_.judge);
      judge_ = std::make_unique<CachedChatClient>(*judge_raw_, cache_,
                                                  config_.retry);
    }
    scorer_raw_ = MakeScorer(config_.scorer, judge_.get(),
                             OptionsFor(config_.judge, config_),
                             JudgeTemplateOf(config_));
    scorer_ = std::make_unique<CachedScorer>(*scorer_raw_, cache_, config_.retry);
  }
  return *scorer_;
}

GenerationOptions Backends::generation_options() const {
  return OptionsFor(config_.generation, config_);
}

GenerationOptions Backends::augmentation_options() const {
  return OptionsFor(config_.augmentation_backend(), config_);
}

size_t Backends::backend_calls() const {
  size_t total = 0;
  if (generation_) total += generation_->backend_calls();
  if (augmentation_) total += augmentation_->backend_calls();
  if (embedding_) total += embedding_->backend_calls();
  if (judge_) total += judge_->backend_calls();
  if (scorer_ && !judge_) total += scorer_->backend_calls();
  return total;
}

std::unique_ptr<Scorer> MakeScorer(const BackendConfig& b, ChatClient* judge,
                                   const GenerationOptions& judge_options,
                                   const PromptTemplate& judge_template) {
  if (b.type == "oracle") return std::make_unique<OracleScorer>();
  if (b.type == "mock") {
    return std::make_unique<MockScorer>(
        b.default_score, std::map<std::string, double>{},
        b.model.empty() ? "mock" : "mock:" + b.model);
  }
  if (b.type == "remote") {
    return std::make_unique<RemoteScalarScorer>(
        b.url, "remote:" + (b.model.empty() ? b.url : b.model),
        b.timeout_seconds);
  }
  if (b.type == "judge") {
    Require(judge != nullptr, "judge scorer needs a chat backend");
    return std::make_unique<JudgeScorer>(*judge, judge_options, judge_template);
  }
  Fail(ErrorKind::kConfig, "unsupported scorer '" + b.type + "'");
}

PromptTemplate ConstraintTemplateOf(const RunConfig& config) {
  return config.constraint_template.empty()
             ? BuiltinConstraintTemplate()
             : LoadTemplate(config.constraint_template);
}

PromptTemplate JudgeTemplateOf(const RunConfig& config) {
  return config.judge_template.empty() ? BuiltinJudgeTemplate()
                                       : LoadTemplate(config.judge_template);
}

std::vector<CategorizedSeed> SelectSeeds(
    const std::vector<SeedInstruction>& candidates,
    const std::vector<Prototype>& prototypes, EmbeddingClient& embedder,
    const SelectionPolicy& policy) {
  Require(!prototypes.empty(), "no prototypes");
  std::vector<std::string> proto_texts;
  for (const auto& p : prototypes) proto_texts.push_back(p.text);
  std::vector<std::string> seed_texts;
  for (const auto& s : candidates) seed_texts.push_back(s.text);
  const auto centroids =
      BuildCentroids(prototypes, EmbedTexts(proto_texts, embedder));
  return FilterByCategory(candidates, EmbedTexts(seed_texts, embedder),
                          centroids, policy);
}

std::vector<AugmentedQuery> AugmentSeeds(const std::vector<SeedInstruction>& seeds,
                                         ChatClient& llm, const RunConfig& config,
                                         const GenerationOptions& options) {
  const PromptTemplate tpl = ConstraintTemplateOf(config);
  std::vector<std::optional<AugmentedQuery>> slots(seeds.size());
  BoundedParallelFor(seeds.size(), config.concurrency, [&](size_t i) {
    try {
      slots[i] = ComposeQuery(
          seeds[i],
          ProposeRequirements(seeds[i], llm, config.n_requirements, options, tpl));
    } catch (const TransportError&) {
      throw;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kGeneration &&
          e.kind() != ErrorKind::kValidation && e.kind() != ErrorKind::kParse) {
        throw;
      }
      log::Warning("augment_skip", {{"seed_id", seeds[i].id},
                                    {"kind", ErrorKindName(e.kind())},
                                    {"error", e.what()}});
    }
  });
  std::vector<AugmentedQuery> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  if (out.empty() && !seeds.empty()) {
    Fail(ErrorKind::kGeneration, "no seed produced a valid requirement set");
  }
  return out;
}

DropoutPlan PlanFor(const AugmentedQuery& query, const RunConfig& config) {
  return MakePlan(static_cast<int>(query.requirements.size()),
                  config.dropout_mode,
                  DeriveSeed(config.rng_seed, "plan:" + query.seed.id));
}

std::vector<EvalItem> BuildDataset(const std::vector<AugmentedQuery>& queries,
                                   ChatClient& llm, const RunConfig& config,
                                   const GenerationOptions& options) {
  std::vector<DropoutPlan> plans;
  std::vector<std::pair<size_t, int>> tasks;
  std::set<std::string> ids;
  for (size_t q = 0; q < queries.size(); ++q) {
    if (!ids.insert(queries[q].seed.id).second) {
      Fail(ErrorKind::kValidation,
           "duplicate query id '" + queries[q].seed.id + "'");
    }
    plans.push_back(PlanFor(queries[q], config));
    for (int round = 1; round <= plans.back().n(); ++round) {
      tasks.emplace_back(q, round);
    }
  }
  std::vector<std::vector<CandidateResponse>> candidates(queries.size());
  for (size_t q = 0; q < queries.size(); ++q) {
    candidates[q].resize(plans[q].n());
  }
  BoundedParallelFor(tasks.size(), config.concurrency, [&](size_t t) {
    const auto [q, round] = tasks[t];
    const ChatRequest request =
        CandidateRequest(queries[q], plans[q], round, options);
    try {
      candidates[q][round - 1] = {llm.Complete(request), plans[q].sets[round - 1],
                                  round, options.model};
    } catch (const TransportError& e) {
      throw TransportError("item '" + queries[q].seed.id + "' round " +
                               std::to_string(round) + ": " + e.what(),
                           e.request_hash());
    }
  });
  std::vector<EvalItem> items;
  for (size_t q = 0; q < queries.size(); ++q) {
    std::optional<uint64_t> shuffle;
    if (config.shuffle_candidates) {
      shuffle = DeriveSeed(config.rng_seed, "shuffle:" + queries[q].seed.id);
    }
    items.push_back(
        AssembleItem(queries[q], plans[q], std::move(candidates[q]), shuffle));
  }
  return items;
}

ScoreRequest ScoreRequestFor(const EvalItem& item, size_t candidate) {
  ScoreRequest request;
  request.query = item.query.composed_text;
  for (const auto& r : item.query.requirements) {
    request.requirements.push_back(r.text);
  }
  request.response = item.candidates.at(candidate).text;
  return request;
}

std::vector<ScoreRecord> ScoreDataset(const std::vector<EvalItem>& items,
                                      CachedScorer& scorer, int concurrency) {
  std::vector<std::pair<size_t, size_t>> tasks;
  for (size_t i = 0; i < items.size(); ++i) {
    for (size_t c = 0; c < items[i].candidates.size(); ++c) tasks.emplace_back(i, c);
  }
  std::vector<ScoreRecord> records(tasks.size());
  const std::string id = scorer.scorer_id();
  BoundedParallelFor(tasks.size(), concurrency, [&](size_t t) {
    const auto [i, c] = tasks[t];
    const auto result = scorer.ScoreWithMetadata(ScoreRequestFor(items[i], c));
    records[t] = {items[i].item_id, static_cast<int>(c), result.score, id,
                  result.latency_ms};
  });
  return records;
}

Evaluation EvaluateScores(const std::vector<EvalItem>& items,
                          const std::vector<ScoreRecord>& scores, Exec exec) {
  Require(!items.empty(), "no items to evaluate");
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < items.size(); ++i) index.emplace(items[i].item_id, i);
  std::vector<std::vector<std::optional<double>>> grid(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    grid[i].resize(items[i].candidates.size());
  }
  std::string scorer_id;
  for (const auto& s : scores) {
    if (scorer_id.empty()) scorer_id = s.scorer_id;
    if (s.scorer_id != scorer_id) {
      Fail(ErrorKind::kIntegrity, "scores mix scorer ids '" + scorer_id +
                                      "' and '" + s.scorer_id + "'");
    }
    auto it = index.find(s.item_id);
    if (it == index.end()) {
      Fail(ErrorKind::kIntegrity, "score for unknown item '" + s.item_id + "'");
    }
    auto& row = grid[it->second];
    if (s.candidate_index < 0 ||
        static_cast<size_t>(s.candidate_index) >= row.size()) {
      Fail(ErrorKind::kIntegrity, "item '" + s.item_id +
                                      "' has no candidate " +
                                      std::to_string(s.candidate_index));
    }
    if (row[s.candidate_index]) {
      Fail(ErrorKind::kIntegrity, "duplicate score for item '" + s.item_id +
                                      "' candidate " +
                                      std::to_string(s.candidate_index));
    }
    row[s.candidate_index] = s.score;
  }
  std::vector<Ranking> predicted;
  std::vector<Ranking> golden;
  auto tied = std::make_unique<bool[]>(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    std::vector<double> values;
    for (size_t c = 0; c < grid[i].size(); ++c) {
      if (!grid[i][c]) {
        Fail(ErrorKind::kIntegrity, "item '" + items[i].item_id +
                                        "' candidate " + std::to_string(c) +
                                        " has no score");
      }
      values.push_back(*grid[i][c]);
    }
    predicted.push_back(RankFromScores(values));
    golden.push_back(items[i].golden);
    tied[i] = HasTies(values);
  }
  Evaluation eval;
  eval.per_item = kernels::EvaluateRankings(predicted, golden, exec);
  eval.summary = Aggregate(eval.per_item, scorer_id,
                           std::span<const bool>(tied.get(), items.size()));
  return eval;
}

std::vector<ScoreRecord> ReadScores(const std::string& path) {
  std::vector<ScoreRecord> out;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    out.push_back(ScoreRecordFromJson(record));
  });
  return out;
}

std::vector<EvalItem> ReadDataset(const std::string& path) {
  std::vector<EvalItem> out;
  std::set<std::string> ids;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    EvalItem item = EvalItemFromJson(record);
    if (!ids.insert(item.item_id).second) {
      Fail(ErrorKind::kValidation, "duplicate item id '" + item.item_id + "'");
    }
    out.push_back(std::move(item));
  });
  return out;
}

std::vector<AugmentedQuery> ReadQueries(const std::string& path) {
  std::vector<AugmentedQuery> out;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    out.push_back(AugmentedQueryFromJson(record));
  });
  return out;
}

std::vector<PreferencePair> ReadPairs(const std::string& path) {
  std::vector<PreferencePair> out;
  ForEachJsonl(path, [&](const Json& record, size_t) {
    out.push_back(PreferencePairFromJson(record));
  });
  return out;
}

Json ToJson(const Prototype& prototype) {
  return {{"id", prototype.id},
          {"category", TaskCategoryName(prototype.category)},
          {"text", prototype.text}};
}

Json RunSynthSeeds(const StageContext& ctx, int per_category,
                   int prototypes_per_category, const std::string& candidates_out,
                   const std::string& prototypes_out) {
  Require(per_category >= 1 && prototypes_per_category >= 1,
          "synthetic corpus sizes must be positive");
  const auto corpus = synthetic::MakeCorpus(per_category, prototypes_per_category,
                                            ctx.config.rng_seed);
  Json summary = Summary("synth-seeds", ctx);
  summary["candidates"] = corpus.candidates.size();
  summary["prototypes"] = corpus.prototypes.size();
  if (ctx.dry_run) return summary;
  WriteSeeds(candidates_out, corpus.candidates);
  std::vector<Json> protos;
  for (const auto& p : corpus.prototypes) protos.push_back(ToJson(p));
  WriteJsonl(prototypes_out, protos);
  summary["outputs"] = {candidates_out, prototypes_out};
  return summary;
}

Json RunBuildSeeds(const StageContext& ctx, const std::string& candidates_path,
                   const std::string& prototypes_path, const std::string& out) {
  const auto candidates = ReadSeeds(candidates_path);
  const auto prototypes = ReadPrototypes(prototypes_path);
  Json summary = Summary("build-seeds", ctx);
  if (ctx.dry_run) {
    const size_t texts = candidates.size() + prototypes.size();
    const size_t batch = ctx.config.embedding.batch_size;
    summary["texts"] = texts;
    summary["embedding_batches"] = (texts + batch - 1) / batch;
    return summary;
  }
  Backends backends(ctx.config);
  const auto selected = SelectSeeds(candidates, prototypes, backends.embedding(),
                                    ctx.config.selection);
  std::vector<Json> records;
  for (const auto& s : selected) {
    Json record = ToJson(s.seed);
    record["similarity"] = s.similarity;
    SeedFromJson(record);
    records.push_back(std::move(record));
  }
  WriteJsonl(out, records);
  summary["records"] = records.size();
  summary["output"] = out;
  summary.update(CacheStats(backends));
  return summary;
}

Json RunAugment(const StageContext& ctx, const std::string& seeds_path,
                const std::string& out) {
  const auto seeds = ReadSeeds(seeds_path);
  Json summary = Summary("augment", ctx);
  Backends backends(ctx.config);
  if (ctx.dry_run) {
    const auto options = backends.augmentation_options();
    size_t cached = 0;
    for (const auto& seed : seeds) {
      const auto hash = backends.augmentation().RequestHash(
          FirstConstraintRequest(seed, ctx.config, options));
      cached += backends.cache().Contains(hash) ? 1 : 0;
    }
    summary.update(DryRunCounts(seeds.size(), cached));
    return summary;
  }
  const auto queries = AugmentSeeds(seeds, backends.augmentation(), ctx.config,
                                    backends.augmentation_options());
  std::vector<Json> records;
  for (const auto& q : queries) {
    records.push_back(ToJson(q));
    AugmentedQueryFromJson(records.back());
  }
  WriteJsonl(out, records);
  summary["records"] = records.size();
  summary["skipped"] = seeds.size() - records.size();
  summary["output"] = out;
  summary.update(CacheStats(backends));
  return summary;
}

Json RunGenCandidates(const StageContext& ctx, const std::string& queries_path,
                      const std::string& out) {
  const auto queries = ReadQueries(queries_path);
  Json summary = Summary("gen-candidates", ctx);
  Backends backends(ctx.config);
  const auto options = backends.generation_options();
  if (ctx.dry_run) {
    size_t requests = 0, cached = 0;
    for (const auto& q : queries) {
      const DropoutPlan plan = PlanFor(q, ctx.config);
      for (int round = 1; round <= plan.n(); ++round) {
        ++requests;
        const auto hash = backends.generation().RequestHash(
            CandidateRequest(q, plan, round, options));
        cached += backends.cache().Contains(hash) ? 1 : 0;
      }
    }
    summary.update(DryRunCounts(requests, cached));
    return summary;
  }
  const auto items =
      BuildDataset(queries, backends.generation(), ctx.config, options);
  std::vector<Json> records;
  for (const auto& item : items) {
    records.push_back(ToJson(item));
    EvalItemFromJson(records.back());
  }
  WriteJsonl(out, records);
  summary["records"] = records.size();
  summary["output"] = out;
  summary.update(CacheStats(backends));
  return summary;
}

Json RunEvalRm(const StageContext& ctx, const std::string& dataset_path,
               const std::string& out) {
  const auto items = ReadDataset(dataset_path);
  Json summary = Summary("eval-rm", ctx);
  Backends backends(ctx.config);
  CachedScorer& scorer = backends.scorer();
  if (ctx.dry_run) {
    size_t requests = 0, cached = 0;
    for (const auto& item : items) {
      for (size_t c = 0; c < item.candidates.size(); ++c) {
        ++requests;
        cached += backends.cache().Contains(
                      scorer.RequestHash(ScoreRequestFor(item, c)))
                      ? 1
                      : 0;
      }
    }
    summary.update(DryRunCounts(requests, cached));
    return summary;
  }
  const auto scores = ScoreDataset(items, scorer, ctx.config.concurrency);
  std::vector<Json> records;
  for (const auto& s : scores) {
    records.push_back(ToJson(s));
    ScoreRecordFromJson(records.back());
  }
  const Evaluation eval = EvaluateScores(items, scores);
  WriteJsonl(out, records);
  summary["records"] = records.size();
  summary["output"] = out;
  summary["report"] = ReportJson(eval.summary, ConfigHash(ctx.config));
  summary.update(CacheStats(backends));
  return summary;
}

Json RunExportBt(const StageContext& ctx, const std::string& dataset_path,
                 const std::string& out) {
  const auto items = ReadDataset(dataset_path);
  Json summary = Summary("export-bt", ctx);
  std::vector<Json> records;
  for (const auto& item : items) {
    for (const auto& pair : MakePairs(item, ctx.config.pairing)) {
      records.push_back(ToJson(pair));
      PreferencePairFromJson(records.back());
    }
  }
  summary["records"] = records.size();
  if (ctx.dry_run) return summary;
  WriteJsonl(out, records);
  summary["output"] = out;
  return summary;
}

Json RunTrainToyBt(const StageContext& ctx, const std::string& pairs_path,
                   const std::string& out, const std::string& eval_dataset_path) {
  const auto pairs = ReadPairs(pairs_path);
  Require(!pairs.empty(), "no preference pairs in " + pairs_path);
  Json summary = Summary("train-toy-bt", ctx);
  summary["pairs"] = pairs.size();
  if (ctx.dry_run) return summary;
  const TrainResult result = TrainToy(pairs, ctx.config.train);
  Json model = ModelDumpJson(result, ConfigHash(ctx.config));
  if (!eval_dataset_path.empty()) {
    const auto items = ReadDataset(eval_dataset_path);
    std::vector<ScoreRecord> scores;
    const std::string id = "toy-bt@" + ConfigHash(ctx.config);
    for (const auto& item : items) {
      for (size_t c = 0; c < item.candidates.size(); ++c) {
        scores.push_back({item.item_id, static_cast<int>(c),
                          result.model.Score(item.query.composed_text,
                                             item.candidates[c].text),
                          id, 0});
      }
    }
    const Evaluation eval = EvaluateScores(items, scores);
    size_t perfect = 0;
    for (const auto& t : eval.per_item) perfect += t.correlation == 1.0 ? 1 : 0;
    model["evaluation"] = ReportJson(eval.summary, ConfigHash(ctx.config));
    model["evaluation"]["items_at_correlation_1"] = perfect;
  }
  WriteFileAtomic(out, model.dump(2) + "\n");
  summary["output"] = out;
  summary["train_loss"] = result.train_loss;
  summary["pairwise_accuracy"] = result.pairwise_accuracy;
  if (model.contains("evaluation")) summary["evaluation"] = model["evaluation"];
  return summary;
}

Json RunReport(const StageContext& ctx, const std::string& dataset_path,
               const std::vector<std::string>& score_paths,
               const std::string& out, const std::string& table_out) {
  Require(!score_paths.empty(), "report needs at least one scores file");
  const auto items = ReadDataset(dataset_path);
  const std::string config_hash = ConfigHash(ctx.config);
  std::vector<EvalSummary> summaries;
  Json reports = Json::array();
  for (const auto& path : score_paths) {
    summaries.push_back(EvaluateScores(items, ReadScores(path)).summary);
    reports.push_back(ReportJson(summaries.back(), config_hash));
  }
  const std::string table = RenderTable(summaries);
  Json summary = Summary("report", ctx);
  summary["reports"] = reports;
  summary["table"] = table;
  if (ctx.dry_run) return summary;
  WriteFileAtomic(out, Json{{"reports", reports}}.dump(2) + "\n");
  if (!table_out.empty()) WriteFileAtomic(table_out, table);
  summary["output"] = out;
  return summary;
}

}  // namespace reqdrop
