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

#include "reqdrop/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "reqdrop/error.h"
#include "test_util.h"

namespace reqdrop {
namespace {

using ::reqdrop::testing::LoadFixture;
using ::reqdrop::testing::RandomPermutation;
using ::reqdrop::testing::Reversed;

Ranking R(std::vector<int> v) { return Ranking{std::move(v)}; }

// Counts concordant minus discordant pairs by walking r1's order and asking
// whether r2 puts each later candidate after each earlier one.
double BruteCorrelation(const Ranking& a, const Ranking& b) {
  const int n = static_cast<int>(a.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[a.ranks[i] - 1] = i;
  int concordant = 0, discordant = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (b.ranks[order[p]] < b.ranks[order[q]]) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  return static_cast<double>(concordant - discordant) / (n * (n - 1) / 2);
}

TEST(MetricsTest, IdenticalAndReversed) {
  EXPECT_EQ(Correlation(R({1, 2, 3, 4, 5}), R({1, 2, 3, 4, 5})), 1.0);
  EXPECT_EQ(Correlation(R({5, 4, 3, 2, 1}), R({1, 2, 3, 4, 5})), -1.0);
}

TEST(MetricsTest, WorkedExample) {
  const Ranking a = R({1, 2, 3, 5, 4});
  const Ranking b = R({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(Correlation(a, b), 0.8);
  EXPECT_DOUBLE_EQ(InstructionLevel(a, b), 0.6);
  EXPECT_EQ(PromptLevel(a, b), 0.0);
}

TEST(MetricsTest, InstructionLevelSwap) {
  EXPECT_EQ(InstructionLevel(R({2, 1}), R({1, 2})), 0.0);
  EXPECT_EQ(InstructionLevel(R({3, 1, 2}), R({3, 1, 2})), 1.0);
}

TEST(MetricsTest, SingleTranspositionBreaksPromptLevel) {
  EXPECT_EQ(PromptLevel(R({1, 2, 3}), R({1, 2, 3})), 1.0);
  EXPECT_EQ(PromptLevel(R({1, 3, 2}), R({1, 2, 3})), 0.0);
}

TEST(MetricsTest, LengthMismatchIsPrecondition) {
  try {
    Correlation(R({1, 2}), R({1, 2, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
  }
  EXPECT_THROW(InstructionLevel(R({1}), R({1, 2})), Error);
  EXPECT_THROW(PromptLevel(R({1}), R({1, 2})), Error);
}

TEST(MetricsTest, SingleCandidateIsDegenerate) {
  const MetricTriple t = EvaluateItem(R({1}), R({1}));
  EXPECT_EQ(t.correlation, 1.0);
  EXPECT_EQ(t.il, 1.0);
  EXPECT_EQ(t.pl, 1.0);
  EXPECT_TRUE(t.degenerate);
}

TEST(MetricsTest, TiesContributeZero) {
  // Raw-score style input with a tie in r1: the tied pair adds nothing.
  EXPECT_DOUBLE_EQ(Correlation(R({1, 1, 3}), R({1, 2, 3})), 2.0 / 3.0);
}

TEST(MetricsTest, MatchesScipyFixture) {
  for (const auto& c : LoadFixture("metric_cases.json")) {
    const Ranking a = R(c["r1"].get<std::vector<int>>());
    const Ranking b = R(c["r2"].get<std::vector<int>>());
    EXPECT_NEAR(Correlation(a, b), c["correlation"].get<double>(), 1e-12);
    EXPECT_NEAR(InstructionLevel(a, b), c["il"].get<double>(), 1e-12);
    EXPECT_EQ(PromptLevel(a, b), c["pl"].get<double>());
  }
}

TEST(MetricsTest, PropertiesOnRandomPermutations) {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(9));
    const Ranking a = RandomPermutation(rng, n);
    const Ranking b = RandomPermutation(rng, n);
    const double c = Correlation(a, b);
    EXPECT_NEAR(c, BruteCorrelation(a, b), 1e-12);
    EXPECT_EQ(c, Correlation(b, a));
    EXPECT_LE(std::fabs(c), 1.0);
    EXPECT_EQ(Correlation(a, a), 1.0);
    EXPECT_EQ(Correlation(a, Reversed(a)), -1.0);
    // Relabeling candidates identically in both rankings preserves the value.
    std::vector<int> relabel(n);
    for (int i = 0; i < n; ++i) relabel[i] = i;
    rng.Shuffle(relabel);
    Ranking pa, pb;
    for (int i = 0; i < n; ++i) {
      pa.ranks.push_back(a.ranks[relabel[i]]);
      pb.ranks.push_back(b.ranks[relabel[i]]);
    }
    EXPECT_NEAR(Correlation(pa, pb), c, 1e-15);
    if (PromptLevel(a, b) == 1.0) EXPECT_EQ(InstructionLevel(a, b), 1.0);
    if (InstructionLevel(a, b) == 1.0) EXPECT_EQ(c, 1.0);
  }
}

TEST(MetricsTest, RandomPairsAverageToZero) {
  Rng rng(11);
  const int samples = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double c = Correlation(RandomPermutation(rng, 5), RandomPermutation(rng, 5));
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / samples;
  const double sd = std::sqrt(sum_sq / samples - mean * mean);
  EXPECT_LT(std::fabs(mean), 3.0 * sd / std::sqrt(static_cast<double>(samples)));
}

TEST(MetricsTest, AggregateMeans) {
  std::vector<MetricTriple> ones(3, MetricTriple{1.0, 1.0, 1.0, false});
  const EvalSummary s = Aggregate(ones, "x");
  EXPECT_EQ(FormatPercent(s.mean_correlation), "100.0");
  EXPECT_EQ(FormatPercent(s.mean_il), "100.0");
  EXPECT_EQ(FormatPercent(s.mean_pl), "100.0");

  std::vector<MetricTriple> two = {{1.0, 1.0, 1.0, false}, {0.8, 0.6, 0.0, false}};
  EXPECT_EQ(FormatPercent(Aggregate(two, "x").mean_correlation), "90.0");

  std::vector<MetricTriple> pl = {{1, 1, 1, false}, {1, 1, 1, false},
                                  {1, 1, 1, false}, {0.8, 0.6, 0, false}};
  EXPECT_DOUBLE_EQ(Aggregate(pl, "x").mean_pl, 0.75);
}

TEST(MetricsTest, AggregateEmptyIsPrecondition) {
  EXPECT_THROW(Aggregate({}, "x"), Error);
}

TEST(MetricsTest, TieRateAndDegenerateCount) {
  std::vector<MetricTriple> t = {{1, 1, 1, true}, {1, 1, 1, false}};
  const bool tied[] = {true, false};
  const EvalSummary s = Aggregate(t, "x", tied);
  EXPECT_EQ(s.tie_rate, 0.5);
  EXPECT_EQ(s.degenerate_items, 1u);
}

TEST(MetricsTest, HalfEvenDisplayRounding) {
  EXPECT_EQ(FormatPercent(0.9455), "94.6");
  EXPECT_EQ(FormatPercent(0.9445), "94.4");
  EXPECT_EQ(FormatPercent(0.7800), "78.0");
  EXPECT_EQ(RoundHalfEven(0.125, 2), 0.12);
  EXPECT_EQ(RoundHalfEven(0.135, 2), 0.14);
  EXPECT_EQ(RoundHalfEven(2.5, 0), 2.0);
  EXPECT_EQ(RoundHalfEven(-2.5, 0), -2.0);
  EXPECT_EQ(RoundHalfEven(2.51, 0), 3.0);
}

TEST(MetricsTest, ReportCarriesRawAndDisplay) {
  std::vector<MetricTriple> t = {{0.9455, 0.5, 0.0, false}};
  const Json j = ReportJson(Aggregate(t, "rm"), "abc");
  EXPECT_EQ(j["scorer_id"], "rm");
  EXPECT_EQ(j["n_items"], 1);
  EXPECT_EQ(j["correlation"].get<double>(), 0.9455);
  EXPECT_EQ(j["display"]["correlation"], "94.6");
  EXPECT_EQ(j["config_hash"], "abc");
  EXPECT_TRUE(j.contains("tie_rate"));
}

TEST(MetricsTest, TableHasColumns) {
  std::vector<MetricTriple> t = {{1, 1, 1, false}};
  const std::string table = RenderTable({Aggregate(t, "oracle")});
  EXPECT_NE(table.find("Correlation"), std::string::npos);
  EXPECT_NE(table.find("IL"), std::string::npos);
  EXPECT_NE(table.find("PL"), std::string::npos);
  EXPECT_NE(table.find("oracle"), std::string::npos);
  EXPECT_NE(table.find("100.0"), std::string::npos);
}

}  // namespace
}  // namespace reqdrop
