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

#ifndef AGNOSTIC_FAIR_KERNEL_H_
#define AGNOSTIC_FAIR_KERNEL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "agnostic_fair/dataset.h"

namespace agnostic_fair {

enum class BasisKind {
  // exp(-|b_m - x|^2 / (2 sigma^2)) around sampled training rows.
  kGaussian,
  // A single basis function K(x) = 1. Turns the reweighed loss into the
  // plain average loss.
  kConstant,
  // One indicator per client: K_k(x) = 1 iff x belongs to client k.
  kClientIndicator,
};

struct KernelBasis {
  BasisKind kind = BasisKind::kGaussian;
  Eigen::MatrixXd centers;  // M x (d+1), Gaussian only
  double sigma = 1.0;
  double bound = 5.0;  // upper bound B on every mixture coefficient
  int num_clients = 0;  // kClientIndicator only

  int size() const;
  void Validate() const;
};

KernelBasis ConstantBasis(double bound);
// Realizes client-level weighting: every sample of client k gets alpha_k.
KernelBasis ClientWeightBasis(int num_clients, double bound);

// Per-shard center quotas: floor of the proportional share, with the
// remainder handed one by one to the largest shards (lowest index first on
// ties). Throws ConfigError when M exceeds the total sample count.
std::vector<std::size_t> BasisQuotas(std::span<const std::size_t> shard_sizes,
                                     std::size_t num_centers);

// Rows a client nominates as kernel centers, sampled without replacement.
Eigen::MatrixXd NominateCenters(const ClientShard& shard, std::size_t quota,
                                std::uint64_t seed);

KernelBasis SelectBasis(const std::vector<ClientShard>& shards,
                        std::size_t num_centers, std::uint64_t seed,
                        double sigma, double bound);

// n_k x M matrix of basis evaluations, fixed for the lifetime of a run.
struct KernelMatrix {
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

KernelMatrix ComputeKernelMatrix(const ClientShard& shard,
                                 const KernelBasis& basis);

struct MixtureCoefficients {
  Eigen::VectorXd alpha;

  // Throws ConfigError when an entry leaves [-tol, bound + tol].
  void CheckBounds(double bound, double tol = 1e-8) const;
};

// theta_i = sum_m alpha_m K_m(x_i).
Eigen::VectorXd Theta(const KernelMatrix& km, const MixtureCoefficients& alpha);

// Basis file: a "# sigma=<s> bound=<B> kind=<k>" line, a header, M rows.
void WriteBasisCsv(const std::filesystem::path& path, const KernelBasis& basis);
KernelBasis ReadBasisCsv(const std::filesystem::path& path);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_KERNEL_H_
