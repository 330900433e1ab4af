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

#ifndef REQDROP_BT_H_
#define REQDROP_BT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reqdrop/dropout.h"
#include "reqdrop/jsonl.h"

namespace reqdrop {

struct PreferencePair {
  std::string item_id;
  std::string query;     // composed text with every requirement
  std::string chosen;
  std::string rejected;
  std::vector<int> chosen_dropped;  // empty unless all-pairs mode
  std::vector<int> dropped;         // requirements dropped on the rejected side
  std::vector<std::string> requirement_kinds;  // kinds of `dropped`
};

Json ToJson(const PreferencePair& pair);
PreferencePair PreferencePairFromJson(const Json& record);

enum class PairingMode {
  kChosenVsEachRejected,  // zero-drop response against each other candidate
  kAllPairs,              // every (fewer drops, more drops) combination
};

// n-1 pairs per n-candidate item by default. An item without a zero-drop
// candidate is a kIntegrity error.
std::vector<PreferencePair> MakePairs(
    const EvalItem& item,
    PairingMode mode = PairingMode::kChosenVsEachRejected);

// -log sigmoid(r_chosen - r_rejected) in softplus form.
double BtLoss(double r_chosen, double r_rejected);

// d loss / d delta = -sigmoid(-delta).
double BtGrad(double delta);

// Features are computed from the requirement block of the query and the
// response text; FeatureNames() gives the layout.
inline constexpr int kFeatureCount = 7;
const std::vector<std::string>& FeatureNames();
std::vector<double> ExtractFeatures(std::string_view query,
                                    std::string_view response);

struct PairFeatures {
  std::vector<double> chosen;
  std::vector<double> rejected;
};

std::vector<PairFeatures> FeaturizePairs(std::span<const PreferencePair> pairs);

struct ToyRewardModel {
  std::vector<std::string> feature_names;
  std::vector<double> weights;

  double Score(std::span<const double> features) const;
  double Score(std::string_view query, std::string_view response) const;
};

// Mean BT loss plus 0.5 * l2 * |w|^2, and its gradient in w.
double MeanBtLoss(std::span<const double> weights,
                  std::span<const PairFeatures> pairs, double l2 = 0.0);
std::vector<double> MeanBtGradient(std::span<const double> weights,
                                   std::span<const PairFeatures> pairs,
                                   double l2 = 0.0);

struct TrainOptions {
  double lr = 0.5;
  int epochs = 500;
  double l2 = 0.0;
  uint64_t rng_seed = 0;
  double init_scale = 0.01;  // std-dev of the seeded initial weights
};

struct TrainResult {
  ToyRewardModel model;
  std::vector<double> loss_history;  // loss before each epoch, then final
  double train_loss = 0.0;
  double pairwise_accuracy = 0.0;
};

// Seeded initial weights for a model over kFeatureCount features.
std::vector<double> InitialWeights(const TrainOptions& options);

// Full-batch gradient descent; deterministic for fixed inputs and seed. A
// non-finite loss raises kTraining.
TrainResult TrainToy(std::span<const PreferencePair> pairs,
                     const TrainOptions& options);

// Fraction of pairs where score(chosen) > score(rejected); ties fail.
double PairwiseAccuracy(const ToyRewardModel& model,
                        std::span<const PreferencePair> pairs);
double PairwiseAccuracy(std::span<const double> weights,
                        std::span<const PairFeatures> pairs);

Json ModelDumpJson(const TrainResult& result, const std::string& config_hash);

}  // namespace reqdrop

#endif  // REQDROP_BT_H_
