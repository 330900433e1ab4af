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

#include <gtest/gtest.h>

#include "test_util.h"

namespace reqdrop {
namespace {

using testing::RunCli;

Json LastLine(const std::string& text) {
  const size_t end = text.find_last_not_of('\n');
  const size_t start = text.rfind('\n', end);
  return Json::parse(text.substr(start == std::string::npos ? 0 : start + 1));
}

TEST(CliTest, FullPipelineWithDryRun) {
  testing::TempDir dir;
  const std::string common = "--cache-dir cache --log-file - ";
  auto r = RunCli(common + "synth-seeds --per-category 6 --prototypes-per-category 2 "
                  "--candidates-out cands.jsonl --prototypes-out protos.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(LastLine(r.out)["candidates"], 30);

  r = RunCli(common + "build-seeds --candidates cands.jsonl --prototypes protos.jsonl "
             "--out seeds.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = RunCli(common + "augment --seeds seeds.jsonl --out queries.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;

  r = RunCli(common + "--dry-run gen-candidates --queries queries.jsonl --out ds.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const Json dry = LastLine(r.out);
  EXPECT_TRUE(dry["dry_run"].get<bool>());
  EXPECT_GT(dry["requests"].get<int>(), 0);
  EXPECT_EQ(dry["cached"], 0);
  EXPECT_FALSE(FileExists(dir.File("ds.jsonl")));

  r = RunCli(common + "gen-candidates --queries queries.jsonl --out ds.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(LastLine(r.out)["backend_calls"], dry["requests"]);

  r = RunCli(common + "eval-rm --dataset ds.jsonl --out scores.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(LastLine(r.out)["report"]["display"]["correlation"], "100.0");

  r = RunCli(common + "report --dataset ds.jsonl --scores scores.jsonl --out rep.json", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.err.find("oracle"), std::string::npos);
  EXPECT_EQ(LastLine(r.out)["config_hash"].get<std::string>().size(), 16u);
}

TEST(CliTest, ErrorsAreJsonOnStderr) {
  testing::TempDir dir;
  WriteFileAtomic(dir.File("bad.json"), R"({"backends": {"scorer": {"type": "nope"}}})");
  auto r = RunCli("--config bad.json --log-file - report --dataset bad.json "
                  "--scores bad.json --out x.json", dir);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(LastLine(r.err)["error"], "config");

  WriteFileAtomic(dir.File("q.jsonl"), "{broken\n");
  r = RunCli("--log-file - gen-candidates --queries q.jsonl --out o.jsonl", dir);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(LastLine(r.err)["error"], "parse");
}

TEST(CliTest, UnreachableBackendExitsWithTransportCode) {
  testing::TempDir dir;
  WriteFileAtomic(dir.File("c.json"), R"({
    "backends": {"generation": {"type": "http", "url": "http://127.0.0.1:1/v1/chat/completions",
                                "timeout_seconds": 2}},
    "retry": {"max_attempts": 2, "base_backoff_ms": 1}})");
  auto r = RunCli("--log-file - synth-seeds --per-category 1 --prototypes-per-category 1 "
                  "--candidates-out c.jsonl --prototypes-out p.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = RunCli("--log-file - --cache-dir cache build-seeds --candidates c.jsonl "
             "--prototypes p.jsonl --out s.jsonl", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = RunCli("--config c.json --cache-dir cache --log-file - augment --seeds s.jsonl "
             "--out q.jsonl", dir);
  EXPECT_EQ(r.exit_code, 3) << r.err;
  const Json error = LastLine(r.err);
  EXPECT_EQ(error["error"], "transport");
  EXPECT_EQ(error["request_hash"].get<std::string>().size(), 64u);
  EXPECT_FALSE(FileExists(dir.File("q.jsonl")));
}

TEST(CliTest, UsageErrorsExitNonZero) {
  testing::TempDir dir;
  EXPECT_NE(RunCli("", dir).exit_code, 0);
  EXPECT_NE(RunCli("eval-rm --dataset missing.jsonl --out x", dir).exit_code, 0);
}

}  // namespace
}  // namespace reqdrop
