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

#include "agnostic_fair/model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCore>

#include "agnostic_fair/errors.h"

namespace agnostic_fair {
namespace {

double Sigmoid(double z) {
  z = std::clamp(z, -kLogitClamp, kLogitClamp);
  return 1.0 / (1.0 + std::exp(-z));
}

void CheckShape(const WeightVector& w, const Eigen::MatrixXd& features) {
  if (w.size() != features.cols()) {
    throw DimensionError("weight vector has " + std::to_string(w.size()) +
                         " entries, features have " +
                         std::to_string(features.cols()) + " columns");
  }
}

void CheckTheta(const ClientShard& shard, const Eigen::VectorXd& theta) {
  if (theta.size() != static_cast<Eigen::Index>(shard.size())) {
    throw DimensionError("theta length " + std::to_string(theta.size()) +
                         " != shard size " + std::to_string(shard.size()));
  }
}

double LogLoss(double z, double y, double clamp_eps) {
  double p = std::clamp(Sigmoid(z), clamp_eps, 1.0 - clamp_eps);
  return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
}

Eigen::ArrayXd SigmoidArray(const Eigen::VectorXd& z) {
  return 1.0 / (1.0 + (-z.array().max(-kLogitClamp).min(kLogitClamp)).exp());
}

// sum_i theta_i l_i from precomputed probabilities.
double WeightedLossSum(const Eigen::ArrayXd& p, const ClientShard& shard,
                       const Eigen::VectorXd& theta, double clamp_eps) {
  Eigen::ArrayXd pc = p.max(clamp_eps).min(1.0 - clamp_eps);
  // Labels are binary, so only one of the two log terms is live.
  Eigen::ArrayXd q = (shard.labels.array() > 0.5).select(pc, 1.0 - pc);
  return -(theta.array() * q.log()).sum();
}

double LossNormalizer(const ClientShard& shard, const PenaltySpec& penalty,
                      const OptimizerSpec& opt) {
  if (opt.normalize_loss_globally) {
    if (penalty.n_total == 0) throw ConfigError("n_total must be positive");
    return static_cast<double>(penalty.n_total);
  }
  return static_cast<double>(shard.size());
}

bool HasPenalty(const PenaltySpec& penalty) {
  return penalty.lambda != 0.0 && penalty.phi_c.size() > 0;
}

// Feature products for the local fit. Mostly-zero feature matrices (one-hot
// blocks) are multiplied through a sparse row-major copy.
class DesignMatrix {
 public:
  explicit DesignMatrix(const Eigen::MatrixXd& dense) : dense_(dense) {
    const double nonzeros = static_cast<double>((dense.array() != 0.0).count());
    const double total = static_cast<double>(dense.size());
    if (total > 0.0 && nonzeros < 0.5 * total) {
      sparse_ = dense.sparseView();
      sparse_.makeCompressed();
      use_sparse_ = true;
    }
  }
  Eigen::VectorXd Times(const Eigen::VectorXd& v) const {
    return use_sparse_ ? Eigen::VectorXd(sparse_ * v) : Eigen::VectorXd(dense_ * v);
  }
  Eigen::VectorXd TransposeTimes(const Eigen::VectorXd& r) const {
    return use_sparse_ ? Eigen::VectorXd(sparse_.transpose() * r)
                       : Eigen::VectorXd(dense_.transpose() * r);
  }

 private:
  const Eigen::MatrixXd& dense_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> sparse_;
  bool use_sparse_ = false;
};

Eigen::VectorXd GradientFromProba(const Eigen::ArrayXd& p,
                                  const WeightVector& w,
                                  const DesignMatrix& x,
                                  const ClientShard& shard,
                                  const Eigen::VectorXd& theta,
                                  const PenaltySpec& penalty, double norm) {
  Eigen::VectorXd residual = (theta.array() * (p - shard.labels.array())).matrix();
  Eigen::VectorXd grad = x.TransposeTimes(residual) / norm;
  if (HasPenalty(penalty)) {
    grad += 2.0 * penalty.lambda * (penalty.Covariance(w) - penalty.tau) *
            penalty.phi_c;
  }
  return grad;
}

}  // namespace

Eigen::VectorXd PredictProba(const WeightVector& w,
                             const Eigen::MatrixXd& features) {
  CheckShape(w, features);
  Eigen::VectorXd z = features * w;
  return z.unaryExpr([](double v) { return Sigmoid(v); });
}

Eigen::VectorXd PredictLabels(const WeightVector& w,
                              const Eigen::MatrixXd& features) {
  return PredictProba(w, features).unaryExpr([](double p) { return p >= 0.5 ? 1.0 : 0.0; });
}

Eigen::VectorXd BoundaryDistance(const WeightVector& w,
                                 const Eigen::MatrixXd& features) {
  CheckShape(w, features);
  return features * w;
}

LossReport WeightedLoss(const WeightVector& w, const ClientShard& shard,
                        const Eigen::VectorXd& theta, std::size_t n_total,
                        double clamp_eps) {
  CheckShape(w, shard.features);
  CheckTheta(shard, theta);
  if (n_total == 0) throw ConfigError("n_total must be positive");
  Eigen::VectorXd z = shard.features * w;
  LossReport report;
  report.per_sample_loss.resize(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    report.per_sample_loss(i) = LogLoss(z(i), shard.labels(i), clamp_eps);
  }
  report.weighted_loss =
      theta.dot(report.per_sample_loss) / static_cast<double>(n_total);
  return report;
}

double PenaltySpec::Covariance(const WeightVector& w) const {
  return phi_c.size() > 0 ? w.dot(phi_c) : 0.0;
}

double PenaltySpec::Value(const WeightVector& w) const {
  if (lambda == 0.0 || phi_c.size() == 0) return 0.0;
  double gap = Covariance(w) - tau;
  return lambda * gap * gap;
}

double LocalObjective(const WeightVector& w, const ClientShard& shard,
                      const Eigen::VectorXd& theta, const PenaltySpec& penalty,
                      const OptimizerSpec& opt) {
  CheckShape(w, shard.features);
  CheckTheta(shard, theta);
  Eigen::VectorXd z = shard.features * w;
  return WeightedLossSum(SigmoidArray(z), shard, theta, opt.clamp_eps) /
             LossNormalizer(shard, penalty, opt) +
         penalty.Value(w);
}

Eigen::VectorXd LossGradient(const WeightVector& w, const ClientShard& shard,
                             const Eigen::VectorXd& theta,
                             const PenaltySpec& penalty,
                             const OptimizerSpec& opt) {
  CheckShape(w, shard.features);
  CheckTheta(shard, theta);
  Eigen::VectorXd z = shard.features * w;
  return GradientFromProba(SigmoidArray(z), w, DesignMatrix(shard.features),
                           shard, theta, penalty,
                           LossNormalizer(shard, penalty, opt));
}

WeightVector FitLocal(const WeightVector& w_init, const ClientShard& shard,
                      const Eigen::VectorXd& theta, const PenaltySpec& penalty,
                      const OptimizerSpec& opt,
                      std::vector<double>* objective_trace) {
  CheckShape(w_init, shard.features);
  CheckTheta(shard, theta);
  if (HasPenalty(penalty) && penalty.phi_c.size() != w_init.size()) {
    throw DimensionError("penalty coefficient has wrong length");
  }
  const double norm = LossNormalizer(shard, penalty, opt);
  auto fail = [&](const char* what, int epoch, double value) {
    std::ostringstream msg;
    msg << "client " << shard.client_id << ": non-finite " << what
        << " at epoch " << epoch << " (value " << value
        << ", |w|inf=" << w_init.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  };

  WeightVector w = w_init;
  const DesignMatrix x(shard.features);
  Eigen::VectorXd z = x.Times(w);
  Eigen::ArrayXd p = SigmoidArray(z);
  double f = WeightedLossSum(p, shard, theta, opt.clamp_eps) / norm +
             penalty.Value(w);
  if (!std::isfinite(f)) fail("objective", 0, f);
  if (objective_trace != nullptr) objective_trace->push_back(f);

  for (int epoch = 0; epoch < opt.local_epochs; ++epoch) {
    Eigen::VectorXd grad = GradientFromProba(p, w, x, shard, theta, penalty, norm);
    if (!grad.allFinite()) fail("gradient", epoch, grad.norm());
    Eigen::VectorXd dz = x.Times(grad);

    double rate = opt.learning_rate;
    bool accepted = false;
    for (int halving = 0; halving <= opt.max_halvings; ++halving) {
      WeightVector w_next = w - rate * grad;
      Eigen::VectorXd z_next = z - rate * dz;
      Eigen::ArrayXd p_next = SigmoidArray(z_next);
      double f_next = WeightedLossSum(p_next, shard, theta, opt.clamp_eps) / norm +
                      penalty.Value(w_next);
      if (!std::isfinite(f_next)) fail("objective", epoch, f_next);
      if (f_next <= f) {
        w = std::move(w_next);
        z = std::move(z_next);
        p = std::move(p_next);
        f = f_next;
        accepted = true;
        break;
      }
      rate *= 0.5;
    }
    if (!accepted) break;
    if (objective_trace != nullptr) objective_trace->push_back(f);
  }
  return w;
}

double Accuracy(const WeightVector& w, const Eigen::MatrixXd& features,
                const Eigen::VectorXd& labels) {
  if (labels.size() == 0) return 0.0;
  Eigen::VectorXd pred = PredictLabels(w, features);
  return (pred.array() == labels.array()).cast<double>().mean();
}

}  // namespace agnostic_fair
