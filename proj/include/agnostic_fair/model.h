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

#ifndef AGNOSTIC_FAIR_MODEL_H_
#define AGNOSTIC_FAIR_MODEL_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "agnostic_fair/dataset.h"

namespace agnostic_fair {

// Logistic-regression parameters; the last entry multiplies the bias column.
using WeightVector = Eigen::VectorXd;

// Logits are clamped to +-kLogitClamp before exponentiation.
inline constexpr double kLogitClamp = 30.0;

Eigen::VectorXd PredictProba(const WeightVector& w,
                             const Eigen::MatrixXd& features);
// 1 where the probability is >= 0.5.
Eigen::VectorXd PredictLabels(const WeightVector& w,
                              const Eigen::MatrixXd& features);

// Signed margin w.x, bias included and not normalized by |w|.
Eigen::VectorXd BoundaryDistance(const WeightVector& w,
                                 const Eigen::MatrixXd& features);

struct LossReport {
  double weighted_loss = 0.0;
  Eigen::VectorXd per_sample_loss;
};

// Per-sample log-loss l_i and (1/n_total) sum_i theta_i l_i. Probabilities
// are clamped to [clamp_eps, 1 - clamp_eps] before the log.
LossReport WeightedLoss(const WeightVector& w, const ClientShard& shard,
                        const Eigen::VectorXd& theta, std::size_t n_total,
                        double clamp_eps = 1e-12);

// Squared fairness penalty lambda * (w.phi_c - tau)^2.
struct PenaltySpec {
  double lambda = 0.0;
  double tau = 0.0;
  Eigen::VectorXd phi_c;  // empty means no penalty
  std::size_t n_total = 0;

  double Covariance(const WeightVector& w) const;
  double Value(const WeightVector& w) const;
};

struct OptimizerSpec {
  double learning_rate = 0.1;
  int local_epochs = 200;
  int max_halvings = 20;
  double clamp_eps = 1e-12;
  // Divide the client loss by the global n instead of the local n_k.
  bool normalize_loss_globally = false;
};

// Client objective: (1/n_k) sum_i theta_i l_i + lambda (w.phi_c - tau)^2,
// with n_k replaced by n_total under normalize_loss_globally.
double LocalObjective(const WeightVector& w, const ClientShard& shard,
                      const Eigen::VectorXd& theta, const PenaltySpec& penalty,
                      const OptimizerSpec& opt);

Eigen::VectorXd LossGradient(const WeightVector& w, const ClientShard& shard,
                             const Eigen::VectorXd& theta,
                             const PenaltySpec& penalty,
                             const OptimizerSpec& opt);

// Full-batch gradient descent on LocalObjective. Every step starts at the
// configured rate and is halved while the objective would increase; after
// max_halvings failed halvings the fit stops. When `objective_trace` is set
// it receives the objective before the first step and after every accepted
// step. Throws NumericalError on a non-finite objective or gradient.
WeightVector FitLocal(const WeightVector& w_init, const ClientShard& shard,
                      const Eigen::VectorXd& theta, const PenaltySpec& penalty,
                      const OptimizerSpec& opt,
                      std::vector<double>* objective_trace = nullptr);

double Accuracy(const WeightVector& w, const Eigen::MatrixXd& features,
                const Eigen::VectorXd& labels);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_MODEL_H_
