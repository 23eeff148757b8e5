// Copyright 2026 The Authors.
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

#include "agnostic_fair/fairness.h"

#include <cmath>

#include "agnostic_fair/errors.h"
#include "spdlog/spdlog.h"

namespace agnostic_fair {

ClientCounts CountSensitive(const ClientShard& shard) {
  return ClientCounts{shard.size(), shard.sensitive.sum()};
}

FairnessStats FairnessStats::FromCounts(std::vector<ClientCounts> counts) {
  if (counts.empty()) throw ConfigError("no clients reported statistics");
  FairnessStats stats;
  double s_total = 0.0;
  for (const auto& c : counts) {
    stats.n_total += c.n;
    s_total += c.sensitive_sum;
  }
  if (stats.n_total == 0) throw ConfigError("clients hold no samples");
  stats.s_bar = s_total / static_cast<double>(stats.n_total);
  if (stats.s_bar == 0.0 || stats.s_bar == 1.0) {
    spdlog::warn("sensitive attribute is constant (s_bar = {}); the covariance "
                 "constraint is degenerate", stats.s_bar);
  }
  stats.per_client = std::move(counts);
  return stats;
}

FairnessStats ComputeStats(const std::vector<ClientShard>& shards) {
  if (shards.empty()) throw ConfigError("no shards");
  std::vector<ClientCounts> counts;
  for (const auto& s : shards) counts.push_back(CountSensitive(s));
  return FairnessStats::FromCounts(std::move(counts));
}

RiskDifferenceReport RiskDifference(const Eigen::VectorXd& predictions,
                                    const Eigen::VectorXd& sensitive) {
  if (predictions.size() != sensitive.size()) {
    throw DimensionError("predictions and sensitive differ in length");
  }
  RiskDifferenceReport report;
  std::array<std::size_t, 2> positives{};
  for (Eigen::Index i = 0; i < predictions.size(); ++i) {
    int g = sensitive(i) >= 0.5 ? 1 : 0;
    ++report.group_counts[g];
    positives[g] += predictions(i) >= 0.5 ? 1 : 0;
  }
  for (int g = 0; g < 2; ++g) {
    if (report.group_counts[g] == 0) {
      throw UndefinedMetricError("risk difference undefined: sensitive group " +
                                 std::to_string(g) + " is empty");
    }
    report.group_rates[g] = static_cast<double>(positives[g]) /
                            static_cast<double>(report.group_counts[g]);
  }
  report.rd = std::abs(report.group_rates[1] - report.group_rates[0]);
  return report;
}

double ReweightedRiskDifference(const Eigen::VectorXd& predictions,
                                const Eigen::VectorXd& sensitive,
                                const Eigen::VectorXd& theta) {
  if (predictions.size() != sensitive.size() ||
      predictions.size() != theta.size()) {
    throw DimensionError("predictions, sensitive and theta differ in length");
  }
  std::array<double, 2> mass{}, positive{};
  for (Eigen::Index i = 0; i < predictions.size(); ++i) {
    if (theta(i) < 0.0) throw ConfigError("theta must be non-negative");
    int g = sensitive(i) >= 0.5 ? 1 : 0;
    mass[g] += theta(i);
    if (predictions(i) >= 0.5) positive[g] += theta(i);
  }
  if (mass[0] <= 0.0 || mass[1] <= 0.0) {
    throw UndefinedMetricError(
        "reweighted risk difference undefined: a group has zero weight");
  }
  return std::abs(positive[1] / mass[1] - positive[0] / mass[0]);
}

Eigen::VectorXd CovarianceCoeffW(const ClientShard& shard,
                                 const Eigen::VectorXd& theta,
                                 const FairnessStats& stats) {
  if (theta.size() != static_cast<Eigen::Index>(shard.size())) {
    throw DimensionError("theta length does not match shard");
  }
  Eigen::VectorXd weights =
      (shard.sensitive.array() - stats.s_bar).matrix().cwiseProduct(theta);
  return shard.features.transpose() * weights /
         static_cast<double>(stats.n_total);
}

Eigen::VectorXd CovarianceCoeffAlpha(const ClientShard& shard,
                                     const KernelMatrix& km,
                                     const WeightVector& w,
                                     const FairnessStats& stats) {
  if (km.rows() != static_cast<Eigen::Index>(shard.size())) {
    throw DimensionError("kernel matrix rows do not match shard");
  }
  Eigen::VectorXd weights = (shard.sensitive.array() - stats.s_bar).matrix().cwiseProduct(
      BoundaryDistance(w, shard.features));
  return km.values.transpose() * weights / static_cast<double>(stats.n_total);
}

Eigen::VectorXd LocalCovarianceCoeffW(const ClientShard& shard) {
  if (shard.size() == 0) throw ConfigError("empty shard");
  const double s_bar_k = shard.sensitive.mean();
  Eigen::VectorXd centered = (shard.sensitive.array() - s_bar_k).matrix();
  return shard.features.transpose() * centered /
         static_cast<double>(shard.size());
}

}  // namespace agnostic_fair
