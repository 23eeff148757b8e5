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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "agnostic_fair/errors.h"

namespace agnostic_fair {

int KernelBasis::size() const {
  switch (kind) {
    case BasisKind::kGaussian:
      return static_cast<int>(centers.rows());
    case BasisKind::kConstant:
      return 1;
    case BasisKind::kClientIndicator:
      return num_clients;
  }
  return 0;
}

void KernelBasis::Validate() const {
  if (size() < 1) throw ConfigError("kernel basis needs at least one function");
  if (!(sigma > 0.0)) throw ConfigError("kernel width sigma must be positive");
  if (!(bound > 0.0)) throw ConfigError("coefficient bound B must be positive");
}

KernelBasis ConstantBasis(double bound) {
  KernelBasis b;
  b.kind = BasisKind::kConstant;
  b.bound = bound;
  b.Validate();
  return b;
}

KernelBasis ClientWeightBasis(int num_clients, double bound) {
  KernelBasis b;
  b.kind = BasisKind::kClientIndicator;
  b.num_clients = num_clients;
  b.bound = bound;
  b.Validate();
  return b;
}

std::vector<std::size_t> BasisQuotas(std::span<const std::size_t> shard_sizes,
                                     std::size_t num_centers) {
  const std::size_t total =
      std::accumulate(shard_sizes.begin(), shard_sizes.end(), std::size_t{0});
  if (num_centers > total) {
    throw ConfigError("requested " + std::to_string(num_centers) +
                      " kernel centers but only " + std::to_string(total) +
                      " training samples exist");
  }
  std::vector<std::size_t> quotas(shard_sizes.size());
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < shard_sizes.size(); ++k) {
    quotas[k] = num_centers * shard_sizes[k] / total;
    assigned += quotas[k];
  }
  std::vector<std::size_t> order(shard_sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return shard_sizes[a] > shard_sizes[b];
  });
  // Cycle over shards largest first; a shard that is full is skipped.
  while (assigned < num_centers) {
    for (std::size_t k : order) {
      if (assigned == num_centers) break;
      if (quotas[k] < shard_sizes[k]) {
        ++quotas[k];
        ++assigned;
      }
    }
  }
  return quotas;
}

Eigen::MatrixXd NominateCenters(const ClientShard& shard, std::size_t quota,
                                std::uint64_t seed) {
  if (quota > shard.size()) {
    throw ConfigError("quota exceeds shard size for client " +
                      std::to_string(shard.client_id));
  }
  std::vector<std::size_t> idx(shard.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL *
                              (static_cast<std::uint64_t>(shard.client_id) + 1)));
  std::shuffle(idx.begin(), idx.end(), rng);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(quota), shard.features.cols());
  for (std::size_t i = 0; i < quota; ++i) {
    rows.row(static_cast<Eigen::Index>(i)) =
        shard.features.row(static_cast<Eigen::Index>(idx[i]));
  }
  return rows;
}

KernelBasis SelectBasis(const std::vector<ClientShard>& shards,
                        std::size_t num_centers, std::uint64_t seed,
                        double sigma, double bound) {
  if (shards.empty()) throw ConfigError("no shards to select centers from");
  if (num_centers < 1) throw ConfigError("M must be >= 1");
  std::vector<std::size_t> sizes;
  for (const auto& s : shards) sizes.push_back(s.size());
  std::vector<std::size_t> quotas = BasisQuotas(sizes, num_centers);

  KernelBasis basis;
  basis.kind = BasisKind::kGaussian;
  basis.sigma = sigma;
  basis.bound = bound;
  basis.centers.resize(static_cast<Eigen::Index>(num_centers), shards[0].features.cols());
  Eigen::Index row = 0;
  for (std::size_t k = 0; k < shards.size(); ++k) {
    if (quotas[k] == 0) continue;
    Eigen::MatrixXd nominated = NominateCenters(shards[k], quotas[k], seed);
    basis.centers.middleRows(row, nominated.rows()) = nominated;
    row += nominated.rows();
  }
  basis.Validate();
  return basis;
}

KernelMatrix ComputeKernelMatrix(const ClientShard& shard,
                                 const KernelBasis& basis) {
  basis.Validate();
  const Eigen::Index n = static_cast<Eigen::Index>(shard.size());
  KernelMatrix km;
  switch (basis.kind) {
    case BasisKind::kConstant:
      km.values = Eigen::MatrixXd::Ones(n, 1);
      break;
    case BasisKind::kClientIndicator:
      if (shard.client_id < 0 || shard.client_id >= basis.num_clients) {
        throw DimensionError("client id outside the indicator basis");
      }
      km.values = Eigen::MatrixXd::Zero(n, basis.num_clients);
      km.values.col(shard.client_id).setOnes();
      break;
    case BasisKind::kGaussian: {
      if (basis.centers.cols() != shard.features.cols()) {
        throw DimensionError("kernel centers have " +
                             std::to_string(basis.centers.cols()) +
                             " columns, shard has " +
                             std::to_string(shard.features.cols()));
      }
      // |b - x|^2 = |x|^2 + |b|^2 - 2 x.b, clamped at zero against rounding.
      Eigen::VectorXd x_sq = shard.features.rowwise().squaredNorm();
      Eigen::RowVectorXd b_sq = basis.centers.rowwise().squaredNorm().transpose();
      Eigen::MatrixXd d2 = -2.0 * shard.features * basis.centers.transpose();
      d2.colwise() += x_sq;
      d2.rowwise() += b_sq;
      const double scale = -1.0 / (2.0 * basis.sigma * basis.sigma);
      km.values = (d2.cwiseMax(0.0) * scale).array().exp().matrix();
      break;
    }
  }
  return km;
}

void MixtureCoefficients::CheckBounds(double bound, double tol) const {
  for (Eigen::Index m = 0; m < alpha.size(); ++m) {
    if (!(alpha(m) >= -tol && alpha(m) <= bound + tol)) {
      throw ConfigError("alpha[" + std::to_string(m) + "] = " +
                        std::to_string(alpha(m)) + " outside [0, B]");
    }
  }
}

Eigen::VectorXd Theta(const KernelMatrix& km, const MixtureCoefficients& alpha) {
  if (km.cols() != alpha.alpha.size()) {
    throw DimensionError("kernel matrix has " + std::to_string(km.cols()) +
                         " columns, alpha has " +
                         std::to_string(alpha.alpha.size()) + " entries");
  }
  return km.values * alpha.alpha;
}

namespace {

const char* KindName(BasisKind kind) {
  switch (kind) {
    case BasisKind::kGaussian:
      return "gaussian";
    case BasisKind::kConstant:
      return "constant";
    case BasisKind::kClientIndicator:
      return "client_indicator";
  }
  return "";
}

}  // namespace

void WriteBasisCsv(const std::filesystem::path& path, const KernelBasis& basis) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.precision(17);
  out << "# sigma=" << basis.sigma << " bound=" << basis.bound
      << " kind=" << KindName(basis.kind) << " clients=" << basis.num_clients
      << '\n';
  for (Eigen::Index j = 0; j < basis.centers.cols(); ++j) {
    out << (j ? "," : "") << 'x' << j;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < basis.centers.rows(); ++i) {
    for (Eigen::Index j = 0; j < basis.centers.cols(); ++j) {
      out << (j ? "," : "") << basis.centers(i, j);
    }
    out << '\n';
  }
}

KernelBasis ReadBasisCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  KernelBasis basis;
  std::string line;
  std::getline(in, line);
  std::istringstream meta(line);
  std::string token;
  meta >> token;  // '#'
  while (meta >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    if (key == "sigma") basis.sigma = std::stod(value);
    if (key == "bound") basis.bound = std::stod(value);
    if (key == "clients") basis.num_clients = std::stoi(value);
    if (key == "kind") {
      basis.kind = value == "constant"           ? BasisKind::kConstant
                   : value == "client_indicator" ? BasisKind::kClientIndicator
                                                 : BasisKind::kGaussian;
    }
  }
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    while (std::getline(fields, token, ',')) row.push_back(std::stod(token));
    rows.push_back(std::move(row));
  }
  if (!rows.empty()) {
    basis.centers.resize(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        basis.centers(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
  }
  basis.Validate();
  return basis;
}

}  // namespace agnostic_fair
