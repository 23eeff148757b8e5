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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "agnostic_fair/errors.h"
#include "test_support.h"

namespace agnostic_fair {
namespace {

using testing::RandomShard;
using testing::RandomVector;

ClientShard Shard(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  ClientShard s;
  s.features = x;
  s.labels = y;
  s.sensitive = Eigen::VectorXd::Zero(y.size());
  return s;
}

TEST(PredictProbaTest, ZeroWeightsGiveHalf) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 3);
  Eigen::VectorXd p = PredictProba(Eigen::VectorXd::Zero(3), x);
  EXPECT_TRUE((p.array() == 0.5).all());
  EXPECT_TRUE((PredictLabels(Eigen::VectorXd::Zero(3), x).array() == 1.0).all());
}

TEST(PredictProbaTest, SaturatesWithoutOverflow) {
  Eigen::MatrixXd x(3, 1);
  x << 30.0, 1e6, -1e6;
  Eigen::VectorXd p = PredictProba(Eigen::VectorXd::Ones(1), x);
  EXPECT_NEAR(p(0), 1.0, 1e-9);
  EXPECT_NEAR(p(1), 1.0, 1e-9);
  EXPECT_GT(p(2), 0.0);
  EXPECT_TRUE(p.allFinite());
}

TEST(PredictProbaTest, LogThreeGivesThreeQuarters) {
  Eigen::MatrixXd x(1, 1);
  x << std::log(3.0);
  EXPECT_NEAR(PredictProba(Eigen::VectorXd::Ones(1), x)(0), 0.75, 1e-15);
}

TEST(PredictProbaTest, DimensionMismatchThrows) {
  EXPECT_THROW(PredictProba(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(1, 3)),
               DimensionError);
}

TEST(BoundaryDistanceTest, Examples) {
  Eigen::MatrixXd x(2, 3);
  x << 0.5, 0.25, 1.0,
       1.0, 1.0, 1.0;
  Eigen::VectorXd w(3);
  w << 1.0, -1.0, 0.0;
  Eigen::VectorXd d = BoundaryDistance(w, x);
  EXPECT_DOUBLE_EQ(d(0), 0.25);
  EXPECT_DOUBLE_EQ(d(1), 0.0);
  EXPECT_TRUE((BoundaryDistance(Eigen::VectorXd::Zero(3), x).array() == 0.0).all());
}

TEST(WeightedLossTest, UniformPredictionLosesLogTwo) {
  std::mt19937_64 rng(1);
  ClientShard s = RandomShard(rng, 0, 6, 3);
  LossReport r = WeightedLoss(Eigen::VectorXd::Zero(3), s, Eigen::VectorXd::Ones(6), 6);
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_NEAR(r.per_sample_loss(i), std::log(2.0), 1e-15);
  EXPECT_NEAR(r.weighted_loss, std::log(2.0), 1e-15);
}

TEST(WeightedLossTest, UniformWeightsScaleByShardShare) {
  std::mt19937_64 rng(2);
  ClientShard s = RandomShard(rng, 0, 8, 3);
  Eigen::VectorXd w = RandomVector(rng, 3, -1.0, 1.0);
  LossReport r = WeightedLoss(w, s, Eigen::VectorXd::Ones(8), 20);
  EXPECT_NEAR(r.weighted_loss, r.per_sample_loss.mean() * 8.0 / 20.0, 1e-15);
  EXPECT_TRUE((r.per_sample_loss.array() >= 0.0).all());
}

TEST(WeightedLossTest, SingleSampleExample) {
  Eigen::MatrixXd x(1, 1);
  x << std::log(3.0);
  ClientShard s = Shard(x, Eigen::VectorXd::Ones(1));
  LossReport r = WeightedLoss(Eigen::VectorXd::Ones(1), s, Eigen::VectorXd::Constant(1, 2.0), 1);
  EXPECT_NEAR(r.weighted_loss, -2.0 * std::log(0.75), 1e-12);
  EXPECT_NEAR(r.weighted_loss, 0.575364, 1e-6);
}

TEST(WeightedLossTest, BadInputsThrow) {
  std::mt19937_64 rng(3);
  ClientShard s = RandomShard(rng, 0, 4, 2);
  EXPECT_THROW(WeightedLoss(Eigen::VectorXd::Zero(2), s, Eigen::VectorXd::Ones(3), 4),
               DimensionError);
  EXPECT_THROW(WeightedLoss(Eigen::VectorXd::Zero(2), s, Eigen::VectorXd::Ones(4), 0),
               ConfigError);
}

double CentralDifference(const Eigen::VectorXd& w, Eigen::Index j, double h,
                         const ClientShard& s, const Eigen::VectorXd& theta,
                         const PenaltySpec& pen, const OptimizerSpec& opt) {
  Eigen::VectorXd up = w, down = w;
  up(j) += h;
  down(j) -= h;
  return (LocalObjective(up, s, theta, pen, opt) - LocalObjective(down, s, theta, pen, opt)) /
         (2.0 * h);
}

class GradientTest : public ::testing::TestWithParam<double> {};

TEST_P(GradientTest, MatchesCentralDifferences) {
  const double lambda = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(lambda * 10) + 11);
  OptimizerSpec opt;
  for (int trial = 0; trial < 40; ++trial) {
    ClientShard s = RandomShard(rng, 0, 5, 4);
    Eigen::VectorXd theta = RandomVector(rng, 5, 0.0, 3.0);
    PenaltySpec pen;
    pen.lambda = lambda;
    pen.tau = 0.05;
    pen.phi_c = RandomVector(rng, 4, -0.5, 0.5);
    pen.n_total = 12;
    Eigen::VectorXd w = RandomVector(rng, 4, -2.0, 2.0);
    Eigen::VectorXd g = LossGradient(w, s, theta, pen, opt);
    Eigen::VectorXd fd(4);
    for (Eigen::Index j = 0; j < 4; ++j) fd(j) = CentralDifference(w, j, 1e-6, s, theta, pen, opt);
    double rel = (g - fd).norm() / std::max(1.0, fd.norm());
    ASSERT_LE(rel, 1e-4) << "trial " << trial;
  }
}

INSTANTIATE_TEST_SUITE_P(Lambdas, GradientTest, ::testing::Values(0.0, 2.0, 100.0));

TEST(LossGradientTest, PenaltyVanishesOnBoundary) {
  std::mt19937_64 rng(4);
  ClientShard s = RandomShard(rng, 0, 7, 3);
  Eigen::VectorXd theta = Eigen::VectorXd::Ones(7);
  Eigen::VectorXd w = RandomVector(rng, 3, -1.0, 1.0);
  OptimizerSpec opt;
  PenaltySpec none;
  PenaltySpec pen;
  pen.lambda = 50.0;
  pen.phi_c = RandomVector(rng, 3, 0.1, 1.0);
  pen.tau = w.dot(pen.phi_c);
  pen.n_total = 7;
  Eigen::VectorXd a = LossGradient(w, s, theta, pen, opt);
  Eigen::VectorXd b = LossGradient(w, s, theta, none, opt);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(LossGradientTest, PlainLogisticGradientWithoutPenalty) {
  std::mt19937_64 rng(5);
  ClientShard s = RandomShard(rng, 0, 9, 3);
  Eigen::VectorXd w = RandomVector(rng, 3, -1.0, 1.0);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(3);
  for (Eigen::Index i = 0; i < 9; ++i) {
    double p = 1.0 / (1.0 + std::exp(-s.features.row(i).dot(w)));
    expected += (p - s.labels(i)) * s.features.row(i).transpose();
  }
  expected /= 9.0;
  Eigen::VectorXd g = LossGradient(w, s, Eigen::VectorXd::Ones(9), PenaltySpec{}, OptimizerSpec{});
  EXPECT_LE((g - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(LocalObjectiveTest, FiniteForLargeWeights) {
  std::mt19937_64 rng(6);
  OptimizerSpec opt;
  PenaltySpec pen;
  pen.lambda = 2.0;
  pen.tau = 0.05;
  pen.n_total = 10;
  for (int trial = 0; trial < 100; ++trial) {
    ClientShard s = RandomShard(rng, 0, 10, 4);
    pen.phi_c = RandomVector(rng, 4, -1.0, 1.0);
    Eigen::VectorXd w = RandomVector(rng, 4, -1e3, 1e3);
    Eigen::VectorXd theta = RandomVector(rng, 10, 0.0, 5.0);
    ASSERT_TRUE(std::isfinite(LocalObjective(w, s, theta, pen, opt)));
    ASSERT_TRUE(LossGradient(w, s, theta, pen, opt).allFinite());
    LossReport r = WeightedLoss(w, s, theta, 10);
    ASSERT_TRUE(r.per_sample_loss.allFinite());
    ASSERT_TRUE((r.per_sample_loss.array() >= 0.0).all());
  }
}

TEST(LocalObjectiveTest, GlobalNormalizationSwitch) {
  std::mt19937_64 rng(7);
  ClientShard s = RandomShard(rng, 0, 5, 3);
  Eigen::VectorXd theta = Eigen::VectorXd::Ones(5);
  PenaltySpec pen;
  pen.n_total = 20;
  OptimizerSpec local, global;
  global.normalize_loss_globally = true;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
  EXPECT_NEAR(LocalObjective(w, s, theta, pen, local), std::log(2.0), 1e-15);
  EXPECT_NEAR(LocalObjective(w, s, theta, pen, global), std::log(2.0) * 5.0 / 20.0, 1e-15);
}

TEST(FitLocalTest, SeparableSetReachesFullAccuracy) {
  Eigen::MatrixXd x(4, 3);
  x << 0.0, 0.0, 1.0,
       0.1, 0.2, 1.0,
       0.9, 1.0, 1.0,
       1.0, 0.8, 1.0;
  Eigen::VectorXd y(4);
  y << 0, 0, 1, 1;
  ClientShard s = Shard(x, y);
  OptimizerSpec opt;
  opt.local_epochs = 2000;
  opt.learning_rate = 1.0;
  WeightVector w = FitLocal(Eigen::VectorXd::Zero(3), s, Eigen::VectorXd::Ones(4),
                            PenaltySpec{}, opt);
  EXPECT_DOUBLE_EQ(Accuracy(w, x, y), 1.0);
}

TEST(FitLocalTest, ZeroEpochsIsNoOp) {
  std::mt19937_64 rng(8);
  ClientShard s = RandomShard(rng, 0, 10, 3);
  Eigen::VectorXd w0 = RandomVector(rng, 3, -1.0, 1.0);
  OptimizerSpec opt;
  opt.local_epochs = 0;
  EXPECT_EQ(FitLocal(w0, s, Eigen::VectorXd::Ones(10), PenaltySpec{}, opt), w0);
}

TEST(FitLocalTest, LargePenaltyHoldsCovarianceNearTau) {
  std::mt19937_64 rng(9);
  ClientShard s = RandomShard(rng, 0, 40, 4);
  PenaltySpec pen;
  pen.lambda = 100.0;
  pen.tau = 0.05;
  pen.phi_c = RandomVector(rng, 4, 0.2, 0.6);
  pen.n_total = 40;
  OptimizerSpec opt;
  opt.local_epochs = 2000;
  WeightVector w = FitLocal(Eigen::VectorXd::Zero(4), s, Eigen::VectorXd::Ones(40), pen, opt);
  EXPECT_LE(std::abs(w.dot(pen.phi_c)), pen.tau + 0.01);
}

TEST(FitLocalTest, ObjectiveNeverIncreases) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    ClientShard s = RandomShard(rng, 0, 30, 5);
    PenaltySpec pen;
    pen.lambda = trial % 2 == 0 ? 2.0 : 100.0;
    pen.tau = 0.05;
    pen.phi_c = RandomVector(rng, 5, -0.5, 0.5);
    pen.n_total = 60;
    OptimizerSpec opt;
    opt.local_epochs = 100;
    opt.learning_rate = 5.0;
    std::vector<double> trace;
    FitLocal(RandomVector(rng, 5, -3.0, 3.0), s, RandomVector(rng, 30, 0.0, 5.0), pen, opt,
             &trace);
    ASSERT_GE(trace.size(), 1u);
    for (std::size_t t = 1; t < trace.size(); ++t) ASSERT_LE(trace[t], trace[t - 1]);
  }
}

TEST(FitLocalTest, PenaltyLengthMismatchThrows) {
  std::mt19937_64 rng(11);
  ClientShard s = RandomShard(rng, 0, 5, 3);
  PenaltySpec pen;
  pen.lambda = 1.0;
  pen.phi_c = Eigen::VectorXd::Ones(2);
  pen.n_total = 5;
  EXPECT_THROW(FitLocal(Eigen::VectorXd::Zero(3), s, Eigen::VectorXd::Ones(5), pen, OptimizerSpec{}),
               DimensionError);
}

// Unweighted logistic regression by plain loops, same step rule.
Eigen::VectorXd ReferenceFit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             double rate0, int epochs) {
  const Eigen::Index n = x.rows(), d = x.cols();
  auto objective = [&](const Eigen::VectorXd& w) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double z = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) z += x(i, j) * w(j);
      double p = 1.0 / (1.0 + std::exp(-z));
      total -= y(i) > 0.5 ? std::log(p) : std::log(1.0 - p);
    }
    return total / static_cast<double>(n);
  };
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double f = objective(w);
  for (int e = 0; e < epochs; ++e) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i) {
      double z = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) z += x(i, j) * w(j);
      double r = 1.0 / (1.0 + std::exp(-z)) - y(i);
      for (Eigen::Index j = 0; j < d; ++j) g(j) += r * x(i, j);
    }
    g /= static_cast<double>(n);
    double rate = rate0;
    bool moved = false;
    for (int h = 0; h <= 20; ++h) {
      Eigen::VectorXd next = w - rate * g;
      double fn = objective(next);
      if (fn <= f) {
        w = next;
        f = fn;
        moved = true;
        break;
      }
      rate *= 0.5;
    }
    if (!moved) break;
  }
  return w;
}

TEST(FitLocalTest, UniformWeightsReduceToPlainLogisticRegression) {
  std::mt19937_64 rng(12);
  ClientShard s = RandomShard(rng, 0, 60, 5);
  OptimizerSpec opt;
  opt.local_epochs = 300;
  WeightVector w = FitLocal(Eigen::VectorXd::Zero(5), s, Eigen::VectorXd::Ones(60),
                            PenaltySpec{}, opt);
  Eigen::VectorXd ref = ReferenceFit(s.features, s.labels, 0.1, 300);
  EXPECT_LE((w - ref).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FitLocalTest, SparseFeaturesMatchDensePath) {
  // One-hot style columns exercise the sparse product path.
  std::mt19937_64 rng(13);
  const Eigen::Index n = 50, d = 12;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, rng() % (d - 1)) = 1.0;
    x(i, d - 1) = 1.0;
  }
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = static_cast<double>(rng() % 2);
  ClientShard s = Shard(x, y);
  OptimizerSpec opt;
  opt.local_epochs = 200;
  WeightVector w = FitLocal(Eigen::VectorXd::Zero(d), s, Eigen::VectorXd::Ones(n),
                            PenaltySpec{}, opt);
  EXPECT_LE((w - ReferenceFit(x, y, 0.1, 200)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(AccuracyTest, CountsMatches) {
  Eigen::MatrixXd x(4, 1);
  x << 1.0, -1.0, 2.0, -2.0;
  Eigen::VectorXd y(4);
  y << 1, 0, 0, 0;
  EXPECT_DOUBLE_EQ(Accuracy(Eigen::VectorXd::Ones(1), x, y), 0.75);
  EXPECT_DOUBLE_EQ(Accuracy(Eigen::VectorXd::Ones(1), Eigen::MatrixXd(0, 1), Eigen::VectorXd(0)), 0.0);
}

}  // namespace
}  // namespace agnostic_fair
