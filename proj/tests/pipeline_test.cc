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

#include <gtest/gtest.h>

#include "reqdrop/error.h"
#include "reqdrop/metrics.h"
#include "synthetic_dataset.h"
#include "test_util.h"

namespace reqdrop {
namespace {

StageContext Context(const testing::TempDir& dir) {
  StageContext ctx;
  ctx.config.cache_dir = dir.File("cache");
  ctx.config.concurrency = 2;
  ctx.config.selection = SelectionPolicy::TopK(6);
  return ctx;
}

// synth-seeds through gen-candidates; returns the dataset path.
std::string BuildAll(const StageContext& ctx, const testing::TempDir& dir) {
  RunSynthSeeds(ctx, 8, 2, dir.File("cands.jsonl"), dir.File("protos.jsonl"));
  RunBuildSeeds(ctx, dir.File("cands.jsonl"), dir.File("protos.jsonl"),
                dir.File("seeds.jsonl"));
  RunAugment(ctx, dir.File("seeds.jsonl"), dir.File("queries.jsonl"));
  RunGenCandidates(ctx, dir.File("queries.jsonl"), dir.File("dataset.jsonl"));
  return dir.File("dataset.jsonl");
}

TEST(PipelineTest, ClosedLoopOracleIsPerfect) {
  testing::TempDir dir;
  const StageContext ctx = Context(dir);
  const std::string dataset = BuildAll(ctx, dir);
  const auto items = ReadDataset(dataset);
  ASSERT_FALSE(items.empty());
  EXPECT_EQ(items.size(), ReadSeeds(dir.File("seeds.jsonl")).size());
  for (const auto& item : items) {
    EXPECT_EQ(item.candidates.size(), 5u);
    EXPECT_TRUE(item.golden.IsStrictPermutation());
  }
  const Json summary = RunEvalRm(ctx, dataset, dir.File("scores.jsonl"));
  EXPECT_EQ(summary["report"]["display"]["correlation"], "100.0");
  EXPECT_EQ(summary["report"]["display"]["il"], "100.0");
  EXPECT_EQ(summary["report"]["display"]["pl"], "100.0");
  EXPECT_EQ(summary["report"]["tie_rate"], 0.0);
  EXPECT_EQ(summary["records"], items.size() * 5);

  RunExportBt(ctx, dataset, dir.File("pairs.jsonl"));
  EXPECT_EQ(ReadPairs(dir.File("pairs.jsonl")).size(), items.size() * 4);
  const Json trained =
      RunTrainToyBt(ctx, dir.File("pairs.jsonl"), dir.File("model.json"), dataset);
  EXPECT_GE(trained["pairwise_accuracy"].get<double>(), 0.99);
  EXPECT_GE(trained["evaluation"]["items_at_correlation_1"].get<size_t>(),
            items.size() * 95 / 100);

  const Json report = RunReport(ctx, dataset, {dir.File("scores.jsonl")},
                                dir.File("report.json"), dir.File("table.txt"));
  EXPECT_NE(ReadFile(dir.File("table.txt")).find("100.0"), std::string::npos);
  EXPECT_EQ(report["reports"][0]["scorer_id"], "oracle");
}

TEST(PipelineTest, WarmCacheMakesNoBackendCallsAndIsByteIdentical) {
  testing::TempDir dir;
  const StageContext ctx = Context(dir);
  const std::string dataset = BuildAll(ctx, dir);
  const std::string first = ReadFile(dataset);
  const Json dry = [&] {
    StageContext d = ctx;
    d.dry_run = true;
    return RunGenCandidates(d, dir.File("queries.jsonl"), dir.File("unused.jsonl"));
  }();
  const size_t rounds = ReadDataset(dataset).size() * 5;
  EXPECT_EQ(dry["requests"], rounds);
  EXPECT_EQ(dry["cached"], rounds);
  EXPECT_FALSE(FileExists(dir.File("unused.jsonl")));
  const Json warm =
      RunGenCandidates(ctx, dir.File("queries.jsonl"), dir.File("dataset2.jsonl"));
  EXPECT_EQ(warm["backend_calls"], 0);
  EXPECT_EQ(ReadFile(dir.File("dataset2.jsonl")), first);
}

TEST(PipelineTest, SameSeedSameBytesAcrossCaches) {
  testing::TempDir a, b;
  EXPECT_EQ(ReadFile(BuildAll(Context(a), a)), ReadFile(BuildAll(Context(b), b)));
  StageContext other = Context(b);
  other.config.rng_seed = 99;
  other.config.cache_dir = b.File("cache99");
  RunGenCandidates(other, b.File("queries.jsonl"), b.File("dataset99.jsonl"));
  EXPECT_NE(ReadFile(b.File("dataset99.jsonl")), ReadFile(a.File("dataset.jsonl")));
}

TEST(PipelineTest, ConstantScorerIsFullyTied) {
  const auto items = testing::SyntheticDataset(2);
  MockScorer constant(0.5);
  CallCache cache;
  RetryPolicy retry;
  CachedScorer scorer(constant, cache, retry);
  const auto scores = ScoreDataset(items, scorer, 2);
  const Evaluation eval = EvaluateScores(items, scores);
  EXPECT_EQ(eval.summary.tie_rate, 1.0);
  EXPECT_EQ(eval.summary.scorer_id, "mock");
}

TEST(PipelineTest, EvaluateScoresChecksIntegrity) {
  const auto items = testing::SyntheticDataset(1);
  OracleScorer oracle;
  CallCache cache;
  RetryPolicy retry;
  CachedScorer scorer(oracle, cache, retry);
  const auto scores = ScoreDataset(items, scorer, 1);
  auto expect_integrity = [&](std::vector<ScoreRecord> s) {
    try {
      EvaluateScores(items, s);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kIntegrity) << e.what();
    }
  };
  auto missing = scores;
  missing.pop_back();
  expect_integrity(missing);
  auto duplicate = scores;
  duplicate.push_back(scores.front());
  expect_integrity(duplicate);
  auto mixed = scores;
  mixed[1].scorer_id = "other";
  expect_integrity(mixed);
  auto unknown = scores;
  unknown[0].item_id = "nope";
  expect_integrity(unknown);
  auto bad_index = scores;
  bad_index[0].candidate_index = 99;
  expect_integrity(bad_index);
  EXPECT_EQ(EvaluateScores(items, scores, Exec::kSerial).summary.mean_correlation,
            1.0);
}

class BrokenChat : public ChatClient {
 public:
  std::string Complete(const ChatRequest&) override { return "no json here"; }
  std::string backend_id() const override { return "broken"; }
};

TEST(PipelineTest, AugmentWithNoUsableSeedIsGenerationError) {
  const auto corpus = synthetic::MakeCorpus(1, 1, 0);
  BrokenChat broken;
  RunConfig config;
  GenerationOptions options;
  options.max_attempts = 1;
  try {
    AugmentSeeds(corpus.candidates, broken, config, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGeneration);
  }
}

TEST(PipelineTest, PlanIsDerivedFromItemId) {
  const auto items = testing::SyntheticDataset(1);
  RunConfig config;
  EXPECT_EQ(ToJson(PlanFor(items[0].query, config)), ToJson(items[0].plan));
  config.rng_seed = 5;
  EXPECT_NE(ToJson(PlanFor(items[0].query, config)).dump(),
            ToJson(items[0].plan).dump());
}

}  // namespace
}  // namespace reqdrop
