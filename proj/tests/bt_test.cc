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

#include "reqdrop/bt.h"

#include <gtest/gtest.h>

#include <cmath>

#include "reqdrop/error.h"
#include "reqdrop/variation.h"
#include "synthetic_dataset.h"
#include "test_util.h"

namespace reqdrop {
namespace {

TEST(BtLossTest, MatchesFixture) {
  for (const auto& c : testing::LoadFixture("bt_values.json")) {
    const double d = c["delta"].get<double>();
    EXPECT_NEAR(BtLoss(d, 0.0), c["loss"].get<double>(), 1e-12) << d;
    EXPECT_NEAR(BtGrad(d), c["grad"].get<double>(), 1e-12) << d;
  }
}

TEST(BtLossTest, KnownValues) {
  EXPECT_NEAR(BtLoss(0.3, 0.3), std::log(2.0), 1e-12);
  EXPECT_NEAR(BtLoss(1.0, 0.0), 0.3132616875, 1e-9);
  EXPECT_NEAR(BtLoss(0.0, 1.0), 1.3132616875, 1e-9);
  EXPECT_TRUE(std::isfinite(BtLoss(1000.0, -1000.0)));
  EXPECT_NEAR(BtLoss(-1000.0, 0.0), 1000.0, 1e-9);
  EXPECT_THROW(BtLoss(NAN, 0.0), Error);
}

TEST(BtLossTest, GradientMatchesFiniteDifference) {
  for (double d = -6.0; d <= 6.0; d += 0.25) {
    const double h = 1e-6;
    const double numeric = (BtLoss(d + h, 0.0) - BtLoss(d - h, 0.0)) / (2 * h);
    EXPECT_NEAR(BtGrad(d), numeric, 1e-7) << d;
  }
}

TEST(BtLossTest, MeanGradientMatchesFiniteDifference) {
  Rng rng(3);
  std::vector<PairFeatures> pairs(20);
  for (auto& p : pairs) {
    for (int i = 0; i < kFeatureCount; ++i) {
      p.chosen.push_back(rng.Uniform01());
      p.rejected.push_back(rng.Uniform01());
    }
  }
  std::vector<double> w(kFeatureCount);
  for (double& x : w) x = rng.Gaussian();
  const double l2 = 0.1;
  const auto grad = MeanBtGradient(w, pairs, l2);
  for (int i = 0; i < kFeatureCount; ++i) {
    auto up = w, down = w;
    up[i] += 1e-6;
    down[i] -= 1e-6;
    const double numeric =
        (MeanBtLoss(up, pairs, l2) - MeanBtLoss(down, pairs, l2)) / 2e-6;
    EXPECT_NEAR(grad[i], numeric, 1e-7);
  }
}

TEST(FeatureTest, Shape) {
  const std::string query = ComposeText(
      "Write a note.", {"Include the word \"quokka\".", "Write at least 3 lines."});
  const auto f = ExtractFeatures(query, "a quokka\nb\nc");
  ASSERT_EQ(f.size(), static_cast<size_t>(kFeatureCount));
  EXPECT_EQ(FeatureNames().size(), static_cast<size_t>(kFeatureCount));
  EXPECT_EQ(f[0], 1.0);
  EXPECT_EQ(f[1], 1.0);
  EXPECT_EQ(f[3], 1.0);
  EXPECT_EQ(f[2], 0.0);
  const auto g = ExtractFeatures(query, "none here");
  EXPECT_EQ(g[0], 0.0);
}

TEST(PairsTest, ChosenVsEachRejected) {
  const auto items = testing::SyntheticDataset(1);
  ASSERT_FALSE(items.empty());
  const auto pairs = MakePairs(items[0]);
  ASSERT_EQ(pairs.size(), items[0].candidates.size() - 1);
  for (size_t j = 0; j < pairs.size(); ++j) {
    EXPECT_TRUE(pairs[j].chosen_dropped.empty());
    EXPECT_EQ(pairs[j].dropped.size(), j + 1);
    EXPECT_EQ(pairs[j].requirement_kinds.size(), j + 1);
    const auto back = PreferencePairFromJson(ToJson(pairs[j]));
    EXPECT_EQ(ToJson(back), ToJson(pairs[j]));
  }
  const auto all = MakePairs(items[0], PairingMode::kAllPairs);
  const size_t n = items[0].candidates.size();
  EXPECT_EQ(all.size(), n * (n - 1) / 2);
}

TEST(PairsTest, RequiresZeroDropCandidate) {
  auto items = testing::SyntheticDataset(1);
  auto& cands = items[0].candidates;
  cands.erase(std::remove_if(cands.begin(), cands.end(),
                             [](const auto& c) { return c.dropped.empty(); }),
              cands.end());
  EXPECT_THROW(MakePairs(items[0]), Error);
}

TEST(TrainToyTest, SeparatesClosedLoopPairs) {
  const auto items = testing::SyntheticDataset(4);
  std::vector<PreferencePair> pairs;
  for (const auto& item : items) {
    for (auto& p : MakePairs(item)) pairs.push_back(std::move(p));
  }
  TrainOptions options;
  const auto result = TrainToy(pairs, options);
  EXPECT_GE(result.pairwise_accuracy, 0.99);
  EXPECT_LT(result.train_loss, result.loss_history.front());
  EXPECT_EQ(result.loss_history.size(), static_cast<size_t>(options.epochs) + 1);
  // Seeded: the same options give the same weights.
  EXPECT_EQ(TrainToy(pairs, options).model.weights, result.model.weights);
  const Json dump = ModelDumpJson(result, "abc");
  EXPECT_EQ(dump["epochs"], options.epochs);
  EXPECT_EQ(dump["weights"].size(), static_cast<size_t>(kFeatureCount));
}

TEST(TrainToyTest, DivergenceIsTrainingError) {
  const auto items = testing::SyntheticDataset(1);
  auto pairs = MakePairs(items[0]);
  TrainOptions options;
  options.lr = 1e308;
  options.epochs = 50;
  try {
    TrainToy(pairs, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTraining);
  }
}

}  // namespace
}  // namespace reqdrop
