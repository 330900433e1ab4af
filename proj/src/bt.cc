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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "reqdrop/checkable.h"
#include "reqdrop/error.h"
#include "reqdrop/kernels.h"
#include "reqdrop/rng.h"

namespace reqdrop {
namespace {

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + e^x) without overflow.
double Softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double PairDelta(std::span<const double> w, const PairFeatures& p) {
  double delta = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    delta += w[i] * (p.chosen[i] - p.rejected[i]);
  }
  return delta;
}

std::vector<std::string> KindsOf(const AugmentedQuery& query,
                                 const std::vector<int>& indices) {
  std::vector<std::string> kinds;
  for (int index : indices) {
    for (const auto& r : query.requirements) {
      if (r.index == index) {
        kinds.emplace_back(RequirementKindName(r.kind));
        break;
      }
    }
  }
  return kinds;
}

}  // namespace

Json ToJson(const PreferencePair& pair) {
  Json out = {{"item_id", pair.item_id},
              {"query", pair.query},
              {"chosen", pair.chosen},
              {"rejected", pair.rejected},
              {"dropped_indices", pair.dropped},
              {"requirement_kinds", pair.requirement_kinds}};
  if (!pair.chosen_dropped.empty()) {
    out["chosen_dropped_indices"] = pair.chosen_dropped;
  }
  return out;
}

PreferencePair PreferencePairFromJson(const Json& record) {
  PreferencePair pair;
  pair.item_id = record.at("item_id").get<std::string>();
  pair.query = record.at("query").get<std::string>();
  pair.chosen = record.at("chosen").get<std::string>();
  pair.rejected = record.at("rejected").get<std::string>();
  pair.dropped = record.at("dropped_indices").get<std::vector<int>>();
  pair.requirement_kinds =
      record.value("requirement_kinds", std::vector<std::string>{});
  pair.chosen_dropped =
      record.value("chosen_dropped_indices", std::vector<int>{});
  if (pair.dropped.size() <= pair.chosen_dropped.size()) {
    Fail(ErrorKind::kValidation,
         "pair for '" + pair.item_id + "' has a rejected side with too few drops");
  }
  return pair;
}

std::vector<PreferencePair> MakePairs(const EvalItem& item, PairingMode mode) {
  std::vector<const CandidateResponse*> by_drops;
  for (const auto& c : item.candidates) by_drops.push_back(&c);
  std::stable_sort(by_drops.begin(), by_drops.end(),
                   [](const auto* a, const auto* b) {
                     return a->dropped.size() < b->dropped.size();
                   });
  if (by_drops.empty() || !by_drops.front()->dropped.empty()) {
    Fail(ErrorKind::kIntegrity,
         "item '" + item.item_id + "' has no zero-drop candidate");
  }

  auto make = [&](const CandidateResponse& chosen,
                  const CandidateResponse& rejected) {
    PreferencePair pair;
    pair.item_id = item.item_id;
    pair.query = item.query.composed_text;
    pair.chosen = chosen.text;
    pair.rejected = rejected.text;
    pair.chosen_dropped = chosen.dropped;
    pair.dropped = rejected.dropped;
    pair.requirement_kinds = KindsOf(item.query, rejected.dropped);
    return pair;
  };

  std::vector<PreferencePair> pairs;
  if (mode == PairingMode::kChosenVsEachRejected) {
    for (size_t j = 1; j < by_drops.size(); ++j) {
      pairs.push_back(make(*by_drops[0], *by_drops[j]));
    }
  } else {
    for (size_t i = 0; i < by_drops.size(); ++i) {
      for (size_t j = i + 1; j < by_drops.size(); ++j) {
        if (by_drops[i]->dropped.size() < by_drops[j]->dropped.size()) {
          pairs.push_back(make(*by_drops[i], *by_drops[j]));
        }
      }
    }
  }
  return pairs;
}

double BtLoss(double r_chosen, double r_rejected) {
  const double delta = r_chosen - r_rejected;
  if (!std::isfinite(delta)) Fail(ErrorKind::kDomain, "non-finite reward in BT loss");
  return Softplus(-delta);
}

double BtGrad(double delta) { return -Sigmoid(-delta); }

const std::vector<std::string>& FeatureNames() {
  static const std::vector<std::string> names = {
      "oracle_satisfaction", "contains_token_rate", "word_range_rate",
      "min_lines_rate",      "forbidden_absent_rate", "paragraph_count_rate",
      "log_length"};
  return names;
}

std::vector<double> ExtractFeatures(std::string_view query,
                                    std::string_view response) {
  using T = CheckableConstraint::Type;
  const auto constraints = CheckableSubset(RequirementLinesOf(query));
  std::vector<double> features(kFeatureCount, 0.0);
  features[0] = OracleScore(constraints, response);
  const T types[] = {T::kContainsToken, T::kWordCountInRange, T::kMinLines,
                     T::kForbiddenToken, T::kParagraphCount};
  for (int t = 0; t < 5; ++t) {
    int total = 0, satisfied = 0;
    for (const auto& c : constraints) {
      if (c.type != types[t]) continue;
      ++total;
      satisfied += IsSatisfied(c, response);
    }
    features[1 + t] = total == 0 ? 0.0 : static_cast<double>(satisfied) / total;
  }
  features[6] = std::log1p(static_cast<double>(CountWords(response))) /
                std::log(1000.0);
  return features;
}

std::vector<PairFeatures> FeaturizePairs(std::span<const PreferencePair> pairs) {
  std::vector<kernels::FeatureTask> tasks;
  tasks.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    tasks.push_back({p.query, p.chosen});
    tasks.push_back({p.query, p.rejected});
  }
  auto rows = kernels::ExtractFeatureRows(tasks, Exec::kParallel);
  std::vector<PairFeatures> out(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    out[i].chosen = std::move(rows[2 * i]);
    out[i].rejected = std::move(rows[2 * i + 1]);
  }
  return out;
}

double ToyRewardModel::Score(std::span<const double> features) const {
  Require(features.size() == weights.size(), "feature dimension mismatch");
  return Dot(weights, features);
}

double ToyRewardModel::Score(std::string_view query,
                             std::string_view response) const {
  return Score(ExtractFeatures(query, response));
}

double MeanBtLoss(std::span<const double> weights,
                  std::span<const PairFeatures> pairs, double l2) {
  Require(!pairs.empty(), "loss over zero pairs");
  double total = 0.0;
  for (const auto& p : pairs) total += Softplus(-PairDelta(weights, p));
  return total / static_cast<double>(pairs.size()) +
         0.5 * l2 * Dot(weights, weights);
}

std::vector<double> MeanBtGradient(std::span<const double> weights,
                                   std::span<const PairFeatures> pairs,
                                   double l2) {
  Require(!pairs.empty(), "gradient over zero pairs");
  std::vector<double> grad(weights.size(), 0.0);
  for (const auto& p : pairs) {
    const double g = BtGrad(PairDelta(weights, p));
    for (size_t i = 0; i < weights.size(); ++i) {
      grad[i] += g * (p.chosen[i] - p.rejected[i]);
    }
  }
  const double count = static_cast<double>(pairs.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    grad[i] = grad[i] / count + l2 * weights[i];
  }
  return grad;
}

std::vector<double> InitialWeights(const TrainOptions& options) {
  Rng rng(options.rng_seed);
  std::vector<double> w(kFeatureCount);
  for (double& x : w) x = options.init_scale * rng.Gaussian();
  return w;
}

TrainResult TrainToy(std::span<const PreferencePair> pairs,
                     const TrainOptions& options) {
  Require(!pairs.empty(), "train_toy needs at least one pair");
  Require(options.epochs >= 0, "epochs must be non-negative");
  const auto features = FeaturizePairs(pairs);

  TrainResult result;
  result.model.feature_names = FeatureNames();
  std::vector<double> w = InitialWeights(options);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double loss = MeanBtLoss(w, features, options.l2);
    if (!std::isfinite(loss)) {
      Fail(ErrorKind::kTraining, "BT loss diverged at epoch " +
                                     std::to_string(epoch) +
                                     "; try a smaller learning rate");
    }
    result.loss_history.push_back(loss);
    const auto grad = MeanBtGradient(w, features, options.l2);
    for (size_t i = 0; i < w.size(); ++i) w[i] -= options.lr * grad[i];
  }
  result.train_loss = MeanBtLoss(w, features, options.l2);
  if (!std::isfinite(result.train_loss) ||
      !std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); })) {
    Fail(ErrorKind::kTraining, "BT training diverged; try a smaller learning rate");
  }
  result.loss_history.push_back(result.train_loss);
  result.pairwise_accuracy = PairwiseAccuracy(w, features);
  result.model.weights = std::move(w);
  return result;
}

double PairwiseAccuracy(std::span<const double> weights,
                        std::span<const PairFeatures> pairs) {
  if (pairs.empty()) return 0.0;
  size_t wins = 0;
  for (const auto& p : pairs) {
    wins += Dot(weights, p.chosen) > Dot(weights, p.rejected);
  }
  return static_cast<double>(wins) / static_cast<double>(pairs.size());
}

double PairwiseAccuracy(const ToyRewardModel& model,
                        std::span<const PreferencePair> pairs) {
  return PairwiseAccuracy(model.weights, FeaturizePairs(pairs));
}

Json ModelDumpJson(const TrainResult& result, const std::string& config_hash) {
  return {{"feature_names", result.model.feature_names},
          {"weights", result.model.weights},
          {"train_loss", result.train_loss},
          {"pairwise_accuracy", result.pairwise_accuracy},
          {"epochs", result.loss_history.empty() ? 0 : result.loss_history.size() - 1},
          {"config_hash", config_hash}};
}

}  // namespace reqdrop
