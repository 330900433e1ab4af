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

#ifndef REQDROP_METRICS_H_
#define REQDROP_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "reqdrop/jsonl.h"
#include "reqdrop/ranking.h"

namespace reqdrop {

// Pair-sign agreement between two rankings:
//   sum_{i<j} sgn(r1[i]-r1[j]) * sgn(r2[i]-r2[j]) / (n(n-1)/2)
// Tied ranks contribute 0. n == 1 returns 1 by convention.
double Correlation(const Ranking& r1, const Ranking& r2);

// Fraction of candidates holding the same rank in both rankings.
double InstructionLevel(const Ranking& r1, const Ranking& r2);

// 1 when the rankings are identical, else 0.
double PromptLevel(const Ranking& r1, const Ranking& r2);

struct MetricTriple {
  double correlation = 0.0;
  double il = 0.0;
  double pl = 0.0;
  bool degenerate = false;  // n == 1
};

MetricTriple EvaluateItem(const Ranking& predicted, const Ranking& golden);

struct EvalSummary {
  std::string scorer_id;
  size_t item_count = 0;
  double mean_correlation = 0.0;
  double mean_il = 0.0;
  double mean_pl = 0.0;
  double tie_rate = 0.0;
  size_t degenerate_items = 0;
};

// Arithmetic means over items. `tied` flags, when given, mark items whose
// raw scores contained ties; tie_rate is their fraction.
EvalSummary Aggregate(std::span<const MetricTriple> triples,
                      const std::string& scorer_id,
                      std::span<const bool> tied = {});

// Round-half-to-even at `decimals` places. Values within 1e-9 (relative) of a
// half are treated as exact halves, so 0.9455 * 100 rounds to 94.6.
double RoundHalfEven(double value, int decimals);

// Mean in [0,1] -> "xx.x" on the x100 reporting scale.
std::string FormatPercent(double mean);

Json ReportJson(const EvalSummary& summary, const std::string& config_hash);
std::string RenderTable(const std::vector<EvalSummary>& summaries);

}  // namespace reqdrop

#endif  // REQDROP_METRICS_H_
