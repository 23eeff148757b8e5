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


#include "agnostic_fair/kernel.h"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "agnostic_fair/errors.h"
#include "test_support.h"

namespace agnostic_fair {
namespace {

using testing::RandomShard;
using testing::RandomVector;
using testing::TempDir;

KernelBasis GaussianBasis(const Eigen::MatrixXd& centers, double sigma) {
  KernelBasis b;
  b.kind = BasisKind::kGaussian;
  b.centers = centers;
  b.sigma = sigma;
  b.bound = 5.0;
  return b;
}

ClientShard OneRow(const Eigen::RowVectorXd& x, int client_id = 0) {
  ClientShard s;
  s.client_id = client_id;
  s.features = x;
  s.labels = Eigen::VectorXd::Zero(1);
  s.sensitive = Eigen::VectorXd::Zero(1);
  return s;
}

TEST(BasisQuotasTest, ProportionalSplit) {
  std::vector<std::size_t> sizes = {80, 20};
  EXPECT_EQ(BasisQuotas(sizes, 10), (std::vector<std::size_t>{8, 2}));
}

TEST(BasisQuotasTest, SingleCenterSingleShard) {
  std::vector<std::size_t> sizes = {7};
  EXPECT_EQ(BasisQuotas(sizes, 1), (std::vector<std::size_t>{1}));
}

TEST(BasisQuotasTest, RemainderGoesToLargestShards) {
  std::vector<std::size_t> sizes = {5, 5, 3};
  auto q = BasisQuotas(sizes, 4);
  EXPECT_EQ(std::accumulate(q.begin(), q.end(), std::size_t{0}), 4u);
  for (std::size_t k = 0; k < sizes.size(); ++k) EXPECT_LE(q[k], sizes[k]);
}

TEST(BasisQuotasTest, TooManyCentersThrows) {
  std::vector<std::size_t> sizes = {3, 2};
  EXPECT_THROW(BasisQuotas(sizes, 6), ConfigError);
}

TEST(BasisQuotasTest, QuotasSumToMAndFitShards) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size_dist(1, 50);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> sizes(1 + trial % 6);
    for (auto& s : sizes) s = size_dist(rng);
    std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    std::size_t m = 1 + rng() % total;
    auto q = BasisQuotas(sizes, m);
    ASSERT_EQ(std::accumulate(q.begin(), q.end(), std::size_t{0}), m);
    for (std::size_t k = 0; k < sizes.size(); ++k) ASSERT_LE(q[k], sizes[k]);
  }
}

TEST(NominateCentersTest, RowsComeFromShardWithoutRepeats) {
  std::mt19937_64 rng(1);
  ClientShard shard = RandomShard(rng, 0, 30, 4);
  Eigen::MatrixXd c = NominateCenters(shard, 10, 42);
  ASSERT_EQ(c.rows(), 10);
  std::vector<int> hits(30, 0);
  for (Eigen::Index m = 0; m < c.rows(); ++m) {
    int found = -1;
    for (Eigen::Index i = 0; i < 30; ++i) {
      if (shard.features.row(i) == c.row(m)) found = static_cast<int>(i);
    }
    ASSERT_GE(found, 0);
    ++hits[found];
  }
  for (int h : hits) EXPECT_LE(h, 1);
}

TEST(NominateCentersTest, QuotaAboveShardSizeThrows) {
  std::mt19937_64 rng(1);
  ClientShard shard = RandomShard(rng, 0, 3, 2);
  EXPECT_THROW(NominateCenters(shard, 4, 0), ConfigError);
}

TEST(SelectBasisTest, DeterministicForSeed) {
  std::mt19937_64 rng(2);
  std::vector<ClientShard> shards = {RandomShard(rng, 0, 40, 3),
                                     RandomShard(rng, 1, 10, 3)};
  KernelBasis a = SelectBasis(shards, 10, 7, 1.0, 5.0);
  KernelBasis b = SelectBasis(shards, 10, 7, 1.0, 5.0);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.size(), 10);
  EXPECT_THROW(SelectBasis({}, 1, 0, 1.0, 5.0), ConfigError);
  EXPECT_THROW(SelectBasis(shards, 0, 0, 1.0, 5.0), ConfigError);
  EXPECT_THROW(SelectBasis(shards, 51, 0, 1.0, 5.0), ConfigError);
}

TEST(KernelBasisTest, ValidateRejectsBadParameters) {
  KernelBasis b = GaussianBasis(Eigen::MatrixXd::Zero(1, 2), 1.0);
  EXPECT_NO_THROW(b.Validate());
  b.sigma = 0.0;
  EXPECT_THROW(b.Validate(), ConfigError);
  b.sigma = 1.0;
  b.bound = -1.0;
  EXPECT_THROW(b.Validate(), ConfigError);
  KernelBasis empty = GaussianBasis(Eigen::MatrixXd(0, 2), 1.0);
  EXPECT_THROW(empty.Validate(), ConfigError);
}

TEST(KernelMatrixTest, ZeroDistanceGivesOne) {
  Eigen::RowVectorXd x(3);
  x << 0.3, 0.7, 1.0;
  KernelMatrix km = ComputeKernelMatrix(OneRow(x), GaussianBasis(x, 1.0));
  EXPECT_DOUBLE_EQ(km.values(0, 0), 1.0);
}

TEST(KernelMatrixTest, SquaredDistanceTwoSigmaSquaredGivesInverseE) {
  const double sigma = 0.5;
  Eigen::RowVectorXd x(2), b(2);
  x << 0.0, 1.0;
  // |x - b|^2 = 2 sigma^2
  b << std::sqrt(2.0) * sigma, 1.0;
  KernelMatrix km = ComputeKernelMatrix(OneRow(x), GaussianBasis(b, sigma));
  EXPECT_NEAR(km.values(0, 0), std::exp(-1.0), 1e-12);
}

TEST(KernelMatrixTest, HugeSigmaGivesAlmostOne) {
  Eigen::RowVectorXd x(2), b(2);
  x << 0.0, 1.0;
  b << 1.0, 1.0;
  KernelMatrix km = ComputeKernelMatrix(OneRow(x), GaussianBasis(b, 1e6));
  EXPECT_NEAR(km.values(0, 0), 1.0, 1e-9);
}

TEST(KernelMatrixTest, DimensionMismatchThrows) {
  Eigen::RowVectorXd x(2);
  x << 0.0, 1.0;
  KernelMatrix ok = ComputeKernelMatrix(OneRow(x), GaussianBasis(x, 1.0));
  EXPECT_EQ(ok.cols(), 1);
  EXPECT_THROW(ComputeKernelMatrix(OneRow(x), GaussianBasis(Eigen::MatrixXd::Zero(1, 3), 1.0)),
               DimensionError);
}

TEST(KernelMatrixTest, ConstantBasisIsAllOnes) {
  std::mt19937_64 rng(4);
  ClientShard shard = RandomShard(rng, 0, 12, 3);
  KernelMatrix km = ComputeKernelMatrix(shard, ConstantBasis(5.0));
  ASSERT_EQ(km.cols(), 1);
  EXPECT_TRUE((km.values.array() == 1.0).all());
  MixtureCoefficients one{Eigen::VectorXd::Ones(1)};
  EXPECT_TRUE((Theta(km, one).array() == 1.0).all());
}

TEST(KernelMatrixTest, ClientIndicatorRows) {
  std::mt19937_64 rng(5);
  KernelBasis basis = ClientWeightBasis(3, 5.0);
  for (int k = 0; k < 3; ++k) {
    ClientShard shard = RandomShard(rng, k, 4, 2);
    KernelMatrix km = ComputeKernelMatrix(shard, basis);
    ASSERT_EQ(km.cols(), 3);
    for (Eigen::Index i = 0; i < km.rows(); ++i) {
      for (int m = 0; m < 3; ++m) EXPECT_EQ(km.values(i, m), m == k ? 1.0 : 0.0);
    }
  }
  ClientShard outside = RandomShard(rng, 3, 2, 2);
  EXPECT_THROW(ComputeKernelMatrix(outside, basis), DimensionError);
}

TEST(ThetaTest, WorkedExamples) {
  KernelMatrix km{Eigen::MatrixXd(1, 2)};
  km.values << 0.5, 0.25;
  MixtureCoefficients alpha{Eigen::Vector2d(2.0, 4.0)};
  EXPECT_DOUBLE_EQ(Theta(km, alpha)(0), 2.0);
  MixtureCoefficients zero{Eigen::Vector2d::Zero()};
  EXPECT_DOUBLE_EQ(Theta(km, zero)(0), 0.0);
  MixtureCoefficients wrong{Eigen::Vector3d::Ones()};
  EXPECT_THROW(Theta(km, wrong), DimensionError);
}

TEST(ThetaTest, LinearInAlpha) {
  std::mt19937_64 rng(6);
  ClientShard shard = RandomShard(rng, 0, 25, 4);
  KernelBasis basis = SelectBasis({shard}, 6, 1, 0.8, 5.0);
  KernelMatrix km = ComputeKernelMatrix(shard, basis);
  for (int trial = 0; trial < 50; ++trial) {
    MixtureCoefficients a{RandomVector(rng, 6, 0.0, 5.0)};
    MixtureCoefficients b{RandomVector(rng, 6, 0.0, 5.0)};
    double s = RandomVector(rng, 1, -2.0, 2.0)(0);
    MixtureCoefficients combo{s * a.alpha + b.alpha};
    Eigen::VectorXd lhs = Theta(km, combo);
    Eigen::VectorXd rhs = s * Theta(km, a) + Theta(km, b);
    ASSERT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ThetaTest, BoundedByAlphaMass) {
  std::mt19937_64 rng(7);
  ClientShard shard = RandomShard(rng, 0, 30, 5);
  KernelBasis basis = SelectBasis({shard}, 8, 2, 0.5, 5.0);
  KernelMatrix km = ComputeKernelMatrix(shard, basis);
  EXPECT_TRUE((km.values.array() > 0.0).all());
  EXPECT_TRUE((km.values.array() <= 1.0).all());
  for (int trial = 0; trial < 50; ++trial) {
    MixtureCoefficients a{RandomVector(rng, 8, 0.0, 5.0)};
    Eigen::VectorXd theta = Theta(km, a);
    ASSERT_TRUE((theta.array() >= 0.0).all());
    ASSERT_TRUE((theta.array() <= a.alpha.sum() + 1e-12).all());
  }
}

TEST(KernelMatrixTest, CoordinatePermutationInvariant) {
  std::mt19937_64 rng(8);
  ClientShard shard = RandomShard(rng, 0, 15, 4);
  KernelBasis basis = SelectBasis({shard}, 5, 3, 0.9, 5.0);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(4);
  perm.indices() << 2, 0, 3, 1;
  ClientShard permuted = shard;
  permuted.features = shard.features * perm;
  KernelBasis permuted_basis = basis;
  permuted_basis.centers = basis.centers * perm;
  Eigen::MatrixXd a = ComputeKernelMatrix(shard, basis).values;
  Eigen::MatrixXd b = ComputeKernelMatrix(permuted, permuted_basis).values;
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MixtureCoefficientsTest, CheckBounds) {
  MixtureCoefficients ok{Eigen::Vector2d(0.0, 5.0)};
  EXPECT_NO_THROW(ok.CheckBounds(5.0));
  MixtureCoefficients high{Eigen::Vector2d(0.0, 5.1)};
  EXPECT_THROW(high.CheckBounds(5.0), ConfigError);
  MixtureCoefficients low{Eigen::Vector2d(-0.1, 1.0)};
  EXPECT_THROW(low.CheckBounds(5.0), ConfigError);
}

TEST(BasisCsvTest, RoundTrip) {
  std::mt19937_64 rng(9);
  ClientShard shard = RandomShard(rng, 0, 20, 3);
  KernelBasis basis = SelectBasis({shard}, 4, 5, 0.75, 3.0);
  TempDir dir;
  WriteBasisCsv(dir.path() / "basis.csv", basis);
  KernelBasis back = ReadBasisCsv(dir.path() / "basis.csv");
  EXPECT_EQ(back.kind, BasisKind::kGaussian);
  EXPECT_DOUBLE_EQ(back.sigma, 0.75);
  EXPECT_DOUBLE_EQ(back.bound, 3.0);
  ASSERT_EQ(back.centers.rows(), 4);
  EXPECT_LE((back.centers - basis.centers).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(ReadBasisCsv(dir.path() / "missing.csv"), ConfigError);
}

}  // namespace
}  // namespace agnostic_fair
