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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "reqdrop/error.h"

namespace reqdrop {
namespace {

int Sign(int x) { return (x > 0) - (x < 0); }

void RequireSameLength(const Ranking& r1, const Ranking& r2) {
  Require(r1.size() == r2.size(), "rankings differ in length");
  Require(r1.size() >= 1, "rankings are empty");
}

}  // namespace

double Correlation(const Ranking& r1, const Ranking& r2) {
  RequireSameLength(r1, r2);
  const size_t n = r1.size();
  if (n == 1) return 1.0;
  long long sum = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      sum += Sign(r1.ranks[i] - r1.ranks[j]) * Sign(r2.ranks[i] - r2.ranks[j]);
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(sum) / pairs;
}

double InstructionLevel(const Ranking& r1, const Ranking& r2) {
  RequireSameLength(r1, r2);
  size_t same = 0;
  for (size_t i = 0; i < r1.size(); ++i) same += r1.ranks[i] == r2.ranks[i];
  return static_cast<double>(same) / static_cast<double>(r1.size());
}

double PromptLevel(const Ranking& r1, const Ranking& r2) {
  Require(r1.size() == r2.size(), "rankings differ in length");
  return r1 == r2 ? 1.0 : 0.0;
}

MetricTriple EvaluateItem(const Ranking& predicted, const Ranking& golden) {
  return {Correlation(predicted, golden), InstructionLevel(predicted, golden),
          PromptLevel(predicted, golden), predicted.size() == 1};
}

EvalSummary Aggregate(std::span<const MetricTriple> triples,
                      const std::string& scorer_id, std::span<const bool> tied) {
  Require(!triples.empty(), "aggregate of zero items");
  Require(tied.empty() || tied.size() == triples.size(),
          "tie flags do not match the item count");
  EvalSummary summary;
  summary.scorer_id = scorer_id;
  summary.item_count = triples.size();
  for (const auto& t : triples) {
    summary.mean_correlation += t.correlation;
    summary.mean_il += t.il;
    summary.mean_pl += t.pl;
    summary.degenerate_items += t.degenerate;
  }
  size_t ties = 0;
  for (bool t : tied) ties += t;
  const double count = static_cast<double>(triples.size());
  summary.mean_correlation /= count;
  summary.mean_il /= count;
  summary.mean_pl /= count;
  summary.tie_rate = static_cast<double>(ties) / count;
  return summary;
}

double RoundHalfEven(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  const double floor = std::floor(scaled);
  const double frac = scaled - floor;
  const double tolerance = 1e-9 * std::max(1.0, std::fabs(scaled));
  double rounded;
  if (std::fabs(frac - 0.5) <= tolerance) {
    rounded = std::fmod(floor, 2.0) == 0.0 ? floor : floor + 1.0;
  } else {
    rounded = std::round(scaled);
  }
  return rounded / scale;
}

std::string FormatPercent(double mean) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", RoundHalfEven(mean * 100.0, 1));
  return buffer;
}

Json ReportJson(const EvalSummary& summary, const std::string& config_hash) {
  return {{"scorer_id", summary.scorer_id},
          {"n_items", summary.item_count},
          {"correlation", summary.mean_correlation},
          {"il", summary.mean_il},
          {"pl", summary.mean_pl},
          {"tie_rate", summary.tie_rate},
          {"degenerate_items", summary.degenerate_items},
          {"config_hash", config_hash},
          {"display",
           {{"correlation", FormatPercent(summary.mean_correlation)},
            {"il", FormatPercent(summary.mean_il)},
            {"pl", FormatPercent(summary.mean_pl)}}}};
}

std::string RenderTable(const std::vector<EvalSummary>& summaries) {
  size_t width = 6;
  for (const auto& s : summaries) width = std::max(width, s.scorer_id.size());
  std::ostringstream out;
  auto row = [&](const std::string& a, const std::string& b,
                 const std::string& c, const std::string& d,
                 const std::string& e) {
    out << a << std::string(width - a.size() + 2, ' ');
    for (const auto* cell : {&b, &c, &d}) {
      out << std::string(12 - std::min<size_t>(12, cell->size()), ' ') << *cell;
    }
    out << std::string(8 - std::min<size_t>(8, e.size()), ' ') << e << '\n';
  };
  row("Models", "Correlation", "IL", "PL", "Items");
  for (const auto& s : summaries) {
    row(s.scorer_id, FormatPercent(s.mean_correlation), FormatPercent(s.mean_il),
        FormatPercent(s.mean_pl), std::to_string(s.item_count));
  }
  return out.str();
}

}  // namespace reqdrop
