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

#include "reqdrop/harness/reward_service.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "httplib.h"
#include "reqdrop/error.h"
#include "reqdrop/scorers.h"
#include "test_util.h"

namespace reqdrop {
namespace {

TEST(AdvantagesTest, MatchesNumpyFixture) {
  for (const auto& c : testing::LoadFixture("advantage_cases.json")) {
    const auto rewards = c["rewards"].get<std::vector<double>>();
    const auto pop = GroupAdvantages(rewards);
    const auto samp = GroupAdvantages(rewards, 1e-6, StdMode::kSample);
    const auto want_pop = c["population"].get<std::vector<double>>();
    const auto want_samp = c["sample"].get<std::vector<double>>();
    ASSERT_EQ(pop.size(), want_pop.size());
    for (size_t i = 0; i < pop.size(); ++i) {
      EXPECT_NEAR(pop[i], want_pop[i], 1e-12);
      EXPECT_NEAR(samp[i], want_samp[i], 1e-12);
    }
  }
}

TEST(AdvantagesTest, Properties) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n = 2 + rng.UniformIndex(30);
    std::vector<double> r(n);
    for (double& x : r) x = 5.0 * rng.Gaussian();
    const auto a = GroupAdvantages(r);
    const double mean = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double var = 0.0;
    for (double x : a) var += x * x;
    var /= n;
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt(var), 1.0, 1e-5);
    // Shift invariance and order preservation.
    std::vector<double> shifted = r;
    for (double& x : shifted) x += 100.0;
    const auto b = GroupAdvantages(shifted);
    for (size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-9);
      for (size_t j = 0; j < n; ++j) {
        if (r[i] < r[j]) EXPECT_LT(a[i], a[j]);
      }
    }
  }
}

TEST(AdvantagesTest, EdgeCases) {
  EXPECT_EQ(GroupAdvantages({3.0, 3.0, 3.0}), (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(GroupAdvantages({3.0, 3.0}, 0.0), (std::vector<double>{0, 0}));
  EXPECT_EQ(GroupAdvantages({1.5}, 1e-6, StdMode::kSample), (std::vector<double>{0}));
  EXPECT_THROW(GroupAdvantages({}), Error);
  EXPECT_THROW(GroupAdvantages({1.0, NAN}), Error);
}

class FailingScorer : public Scorer {
 public:
  explicit FailingScorer(bool transport) : transport_(transport) {}
  double ScoreOne(const ScoreRequest&) override {
    if (transport_) throw TransportError("upstream down", "deadbeef");
    Fail(ErrorKind::kIntegrity, "scorer exploded");
  }
  std::string scorer_id() const override { return "failing"; }
  ScorerKind kind() const override { return ScorerKind::kRemoteScalar; }

 private:
  bool transport_;
};

Json RewardsBody(bool advantages = true) {
  return {{"query", "Write a note."},
          {"requirements", {"Include the word \"quokka\".", "Write at least 2 lines."}},
          {"rollouts", {"A quokka.\nSecond line.", "A quokka.", "Nothing."}},
          {"return_advantages", advantages}};
}

TEST(RewardServiceTest, HandleRewardsScoresAndNormalizes) {
  OracleScorer oracle;
  RewardService service(oracle);
  const HttpReply reply = service.HandleRewards(RewardsBody().dump(), StdMode::kPopulation);
  ASSERT_EQ(reply.status, 200) << reply.body.dump();
  EXPECT_EQ(reply.body["rewards"], (Json{1.0, 0.5, 0.0}));
  const auto expected = GroupAdvantages({1.0, 0.5, 0.0});
  EXPECT_EQ(reply.body["advantages"].get<std::vector<double>>(), expected);
  EXPECT_FALSE(service.HandleRewards(RewardsBody(false).dump(), StdMode::kPopulation)
                   .body.contains("advantages"));
}

TEST(RewardServiceTest, ValidationStatuses) {
  OracleScorer oracle;
  RewardServiceOptions options;
  options.max_rollouts = 2;
  RewardService service(oracle, options);
  auto status = [&](const Json& body) {
    return service.HandleRewards(body.dump(), StdMode::kPopulation).status;
  };
  EXPECT_EQ(status(RewardsBody()), 413);
  auto two = [] {
    Json b = RewardsBody();
    b["rollouts"].erase(2);
    return b;
  };
  EXPECT_EQ(status(two()), 200);
  Json b = two();
  b["rollouts"] = Json::array();
  EXPECT_EQ(status(b), 400);
  b = two();
  b["extra"] = 1;
  EXPECT_EQ(status(b), 400);
  b = two();
  b["return_advantages"] = "yes";
  EXPECT_EQ(status(b), 400);
  b = two();
  b.erase("query");
  EXPECT_EQ(status(b), 400);
  EXPECT_EQ(service.HandleRewards("[1,2", StdMode::kPopulation).status, 400);
  b = {{"query", "q"}, {"requirements", Json::array()}, {"rollouts", {""}}};
  EXPECT_EQ(status(b), 400);
}

TEST(RewardServiceTest, ScorerFailuresMapToStatuses) {
  FailingScorer transport(true), broken(false);
  RewardService a(transport), b(broken);
  const HttpReply r502 = a.HandleRewards(RewardsBody().dump(), StdMode::kPopulation);
  EXPECT_EQ(r502.status, 502);
  EXPECT_EQ(r502.body["request_hash"], "deadbeef");
  const HttpReply r500 = b.HandleRewards(RewardsBody().dump(), StdMode::kPopulation);
  EXPECT_EQ(r500.status, 500);
  EXPECT_EQ(r500.body["kind"], "integrity");
}

TEST(RewardServiceTest, ServesOverHttp) {
  OracleScorer oracle;
  RewardService service(oracle);
  service.Start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", service.port());
  auto health = client.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(Json::parse(health->body)["scorer_id"], "oracle");

  auto res = client.Post("/v1/rewards?std=sample", RewardsBody().dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["advantages"].get<std::vector<double>>(),
            GroupAdvantages({1.0, 0.5, 0.0}, 1e-6, StdMode::kSample));
  auto bad = client.Post("/v1/rewards?std=robust", RewardsBody().dump(), "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  service.Stop();
  EXPECT_FALSE(service.running());
}

}  // namespace
}  // namespace reqdrop
