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


#include "agnostic_fair/lpsolve.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "agnostic_fair/errors.h"
#include "test_support.h"

namespace agnostic_fair {
namespace {

using testing::RandomVector;

AlphaLp Lp(Eigen::VectorXd objective, Eigen::VectorXd equality,
           std::optional<Eigen::VectorXd> fairness, double tau = 0.05,
           double bound = 5.0) {
  AlphaLp lp;
  lp.objective = std::move(objective);
  lp.equality = std::move(equality);
  lp.fairness_row = std::move(fairness);
  lp.tau = tau;
  lp.box_upper = bound;
  return lp;
}

TEST(SolveTest, SingleCoefficientForcedByEquality) {
  AlphaLp lp = Lp(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, 0.5),
                  Eigen::VectorXd::Zero(1));
  LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.alpha.alpha(0), 2.0, 1e-10);
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-10);
  LpSolution oracle = BruteForceOracle(lp);
  EXPECT_NEAR(oracle.alpha.alpha(0), sol.alpha.alpha(0), 1e-8);
}

TEST(SolveTest, TwoCoefficientVertex) {
  AlphaLp lp = Lp(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.5, 0.5),
                  Eigen::VectorXd(Eigen::Vector2d::Zero()));
  LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.alpha.alpha(0), 2.0, 1e-10);
  EXPECT_NEAR(sol.alpha.alpha(1), 0.0, 1e-10);
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-10);
}

TEST(SolveTest, FairnessRowBinds) {
  AlphaLp lp = Lp(Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(1.0, 1.0),
                  Eigen::VectorXd(Eigen::Vector2d(10.0, -10.0)));
  LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  const Eigen::VectorXd& a = sol.alpha.alpha;
  EXPECT_LE(std::abs(10.0 * a(0) - 10.0 * a(1)), 0.05 + 1e-8);
  EXPECT_NEAR(a.sum(), 1.0, 1e-8);
  EXPECT_NEAR(sol.objective_value, BruteForceOracle(lp).objective_value, 1e-8);
}

TEST(SolveTest, MatchesOracleOnRandomFeasibleInstances) {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 100) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 4);
    AlphaLp lp = Lp(RandomVector(rng, m, -1.0, 1.0), RandomVector(rng, m, 0.05, 1.0),
                    RandomVector(rng, m, -1.0, 1.0));
    LpSolution oracle = BruteForceOracle(lp);
    if (oracle.status != LpStatus::kOptimal) continue;
    ++checked;
    LpSolution sol = Solve(lp);
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    ASSERT_GE(sol.objective_value, oracle.objective_value - 1e-6);
    ASSERT_LE(MaxViolation(lp, sol.alpha.alpha), 1e-8);
  }
}

TEST(SolveTest, InfeasibleFairnessRowIsRelaxedMinimally) {
  // Every coefficient pushes the row above 1.0 while tau is 0.05.
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 4);
    AlphaLp lp = Lp(RandomVector(rng, m, -1.0, 1.0), RandomVector(rng, m, 0.05, 1.0),
                    RandomVector(rng, m, 1.0, 2.0));
    LpSolution sol = Solve(lp);
    LpSolution oracle = BruteForceOracle(lp);
    ASSERT_EQ(sol.status, oracle.status);
    // The sum-to-one row itself may not fit in the box.
    if (oracle.status == LpStatus::kError) continue;
    ASSERT_EQ(sol.status, LpStatus::kInfeasibleRelaxed);
    ASSERT_GT(sol.slack_used, 0.0);
    ASSERT_NEAR(sol.slack_used, oracle.slack_used, 1e-8);
    ASSERT_NEAR(sol.objective_value, oracle.objective_value, 1e-6);
    ASSERT_LE(MaxViolation(lp, sol.alpha.alpha, sol.slack_used), 1e-8);
  }
}

TEST(SolveTest, RelaxedSlackHandExample) {
  // alpha = 1 is forced; the row evaluates to 2, so s = 2 - 0.05.
  AlphaLp lp = Lp(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1),
                  Eigen::VectorXd::Constant(1, 2.0));
  LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kInfeasibleRelaxed);
  EXPECT_NEAR(sol.slack_used, 1.95, 1e-9);
}

TEST(SolveTest, AllZeroEqualityIsError) {
  AlphaLp lp = Lp(Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d::Zero(), std::nullopt);
  EXPECT_EQ(Solve(lp).status, LpStatus::kError);
}

TEST(SolveTest, EqualityOutsideBoxIsError) {
  AlphaLp lp = Lp(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, 0.1), std::nullopt);
  EXPECT_EQ(Solve(lp).status, LpStatus::kError);
}

TEST(SolveTest, MalformedInputThrows) {
  EXPECT_THROW(Solve(Lp(Eigen::VectorXd(0), Eigen::VectorXd(0), std::nullopt)), ConfigError);
  EXPECT_THROW(Solve(Lp(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(3), std::nullopt)),
               DimensionError);
  EXPECT_THROW(Solve(Lp(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2), std::nullopt, -1.0)),
               ConfigError);
  EXPECT_THROW(
      Solve(Lp(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2), std::nullopt, 0.05, 0.0)),
      ConfigError);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(2);
  bad(1) = std::nan("");
  EXPECT_THROW(Solve(Lp(bad, Eigen::VectorXd::Ones(2), std::nullopt)), NumericalError);
}

TEST(BruteForceOracleTest, RefusesLargeProblems) {
  AlphaLp lp = Lp(Eigen::VectorXd::Ones(7), Eigen::VectorXd::Ones(7), std::nullopt);
  EXPECT_THROW(BruteForceOracle(lp), ConfigError);
  lp = Lp(Eigen::VectorXd::Ones(6), Eigen::VectorXd::Ones(6), std::nullopt);
  EXPECT_EQ(BruteForceOracle(lp).status, LpStatus::kOptimal);
}

TEST(SolveTest, BoxRespectedIncludingRelaxedMode) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 12);
    const double lo = trial % 2 == 0 ? -1.0 : 1.0;
    AlphaLp lp = Lp(RandomVector(rng, m, -1.0, 1.0), RandomVector(rng, m, 0.05, 1.0),
                    RandomVector(rng, m, lo, 2.0), 0.05, 0.5 + static_cast<double>(rng() % 5));
    LpSolution sol = Solve(lp);
    if (sol.status == LpStatus::kError) continue;
    ASSERT_GE(sol.alpha.alpha.minCoeff(), -1e-12);
    ASSERT_LE(sol.alpha.alpha.maxCoeff(), lp.box_upper + 1e-12);
    ASSERT_NEAR(lp.equality.dot(sol.alpha.alpha), 1.0, 1e-8);
  }
}

TEST(SolveTest, LargeProblemsSatisfyConstraints) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index m = 200;
    AlphaLp lp = Lp(RandomVector(rng, m, 0.0, 1.0), RandomVector(rng, m, 0.0, 0.02),
                    RandomVector(rng, m, -0.01, 0.01));
    LpSolution sol = Solve(lp);
    ASSERT_NE(sol.status, LpStatus::kError) << sol.message;
    ASSERT_LE(MaxViolation(lp, sol.alpha.alpha, sol.slack_used), 1e-8);
  }
}

TEST(SolveTest, Deterministic) {
  std::mt19937_64 rng(21);
  AlphaLp lp = Lp(RandomVector(rng, 30, 0.0, 1.0), RandomVector(rng, 30, 0.0, 0.1),
                  RandomVector(rng, 30, -0.5, 0.5));
  LpSolution a = Solve(lp);
  LpSolution b = Solve(lp);
  EXPECT_EQ(a.alpha.alpha, b.alpha.alpha);
  EXPECT_EQ(a.objective_value, b.objective_value);
}

TEST(SolveTest, TiesGoToLowestIndex) {
  AlphaLp lp = Lp(Eigen::Vector3d(1.0, 1.0, 1.0), Eigen::Vector3d(1.0, 1.0, 1.0), std::nullopt,
                  0.05, 5.0);
  LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective_value, 1.0, 1e-12);
  LpSolution again = Solve(lp);
  EXPECT_EQ(sol.alpha.alpha, again.alpha.alpha);
}

TEST(LpDumpTest, ListsRows) {
  AlphaLp lp = Lp(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.5, 0.5),
                  Eigen::VectorXd(Eigen::Vector2d(0.1, -0.1)));
  std::ostringstream out;
  WriteLpDump(out, lp);
  const std::string text = out.str();
  EXPECT_NE(text.find("objective"), std::string::npos);
  EXPECT_NE(text.find("equality"), std::string::npos);
  EXPECT_NE(text.find("fairness"), std::string::npos);
  EXPECT_STREQ(LpStatusName(LpStatus::kInfeasibleRelaxed), "infeasible_relaxed");
}

}  // namespace
}  // namespace agnostic_fair
