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

#ifndef AGNOSTIC_FAIR_FAIRNESS_H_
#define AGNOSTIC_FAIR_FAIRNESS_H_

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "agnostic_fair/dataset.h"
#include "agnostic_fair/kernel.h"
#include "agnostic_fair/model.h"

namespace agnostic_fair {

// What each client reports in the statistics round.
struct ClientCounts {
  std::size_t n = 0;
  double sensitive_sum = 0.0;
};

struct FairnessStats {
  double s_bar = 0.0;
  std::size_t n_total = 0;
  std::vector<ClientCounts> per_client;

  // Pools per-client counts. Warns when s_bar is 0 or 1, where the
  // covariance constraint degenerates.
  static FairnessStats FromCounts(std::vector<ClientCounts> counts);
};

ClientCounts CountSensitive(const ClientShard& shard);
FairnessStats ComputeStats(const std::vector<ClientShard>& shards);

struct RiskDifferenceReport {
  double rd = 0.0;
  // Indexed by sensitive value: [0] minority, [1] majority.
  std::array<double, 2> group_rates{};
  std::array<std::size_t, 2> group_counts{};
};

// |P(yhat=1 | s=1) - P(yhat=1 | s=0)|. Throws UndefinedMetricError when a
// sensitive group is empty.
RiskDifferenceReport RiskDifference(const Eigen::VectorXd& predictions,
                                    const Eigen::VectorXd& sensitive);

// Same gap with every sample weighted by theta_i.
double ReweightedRiskDifference(const Eigen::VectorXd& predictions,
                                const Eigen::VectorXd& sensitive,
                                const Eigen::VectorXd& theta);

// phi_{C,k} = (1/n) sum_i (s_i - s_bar) theta_i x_i, so that
// w . sum_k phi_{C,k} is the reweighted decision-boundary covariance.
Eigen::VectorXd CovarianceCoeffW(const ClientShard& shard,
                                 const Eigen::VectorXd& theta,
                                 const FairnessStats& stats);

// psi_{C,k,m} = (1/n) sum_i (s_i - s_bar) K_m(x_i) (w . x_i), so that
// alpha . sum_k psi_{C,k} is the same covariance for fixed w.
Eigen::VectorXd CovarianceCoeffAlpha(const ClientShard& shard,
                                     const KernelMatrix& km,
                                     const WeightVector& w,
                                     const FairnessStats& stats);

// Client-only covariance coefficient: (1/n_k) sum_i (s_i - s_bar_k) x_i with
// the client's own sensitive mean.
Eigen::VectorXd LocalCovarianceCoeffW(const ClientShard& shard);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_FAIRNESS_H_
