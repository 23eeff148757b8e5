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

#ifndef AGNOSTIC_FAIR_FEDERATION_H_
#define AGNOSTIC_FAIR_FEDERATION_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agnostic_fair/dataset.h"
#include "agnostic_fair/fairness.h"
#include "agnostic_fair/kernel.h"
#include "agnostic_fair/lpsolve.h"
#include "agnostic_fair/model.h"
#include "json.hpp"

namespace agnostic_fair {

// Which covariance term a client penalizes while fitting w.
enum class PenaltyMode {
  kNone,
  // Global covariance under the broadcast reweighing.
  kReweighted,
  // Global covariance with every sample weighted 1.
  kUnweighted,
  // The client's own covariance with its own sensitive mean.
  kLocal,
};

struct ProtocolConfig {
  BasisKind basis_kind = BasisKind::kGaussian;
  std::size_t num_centers = 200;
  double sigma = 1.0;
  double bound = 5.0;
  double lambda = 2.0;
  double tau = 0.05;
  PenaltyMode penalty = PenaltyMode::kReweighted;
  // When false alpha stays at its initial value.
  bool optimize_alpha = true;
  bool lp_fairness_row = true;
  OptimizerSpec optimizer;
  SimplexOptions simplex;
  std::uint64_t seed = 0;
  bool parallel_clients = false;
};

// Messages. Every payload is a scalar, a length-M vector, a length-(d+1)
// vector or a weight vector; none is indexed by sample.

struct StatsReport {
  int client_id = 0;
  ClientCounts counts;
};

struct StatsBroadcast {
  double s_bar = 0.0;
  std::size_t n_total = 0;
};

// Raw rows a client contributes as kernel centers. This is the one message
// that carries sample values.
struct CenterNomination {
  int client_id = 0;
  Eigen::MatrixXd rows;
};

struct ThetaMassReport {
  int client_id = 0;
  Eigen::VectorXd psi_theta;
};

struct CovarianceReport {
  int client_id = 0;
  Eigen::VectorXd phi_cov;
};

struct CoefficientBundle {
  int client_id = 0;
  int round = 0;
  Eigen::VectorXd psi_loss;   // (1/n) sum_i K_m(x_i) l_i(w_k)
  Eigen::VectorXd psi_theta;  // (1/n) sum_i K_m(x_i)
  Eigen::VectorXd psi_cov;    // (1/n) sum_i (s_i - s_bar) K_m(x_i) w_k.x_i
  Eigen::VectorXd phi_cov;    // (1/n) sum_i (s_i - s_bar) theta_i x_i
  WeightVector w_local;
};

struct ServerBroadcast {
  int round = 0;
  WeightVector w_avg;
  MixtureCoefficients alpha;
  Eigen::VectorXd phi_cov;
};

nlohmann::json ToJson(const StatsReport& m);
nlohmann::json ToJson(const StatsBroadcast& m);
nlohmann::json ToJson(const CenterNomination& m);
nlohmann::json ToJson(const ThetaMassReport& m);
nlohmann::json ToJson(const CovarianceReport& m);
nlohmann::json ToJson(const CoefficientBundle& m);
nlohmann::json ToJson(const ServerBroadcast& m);
nlohmann::json ToJson(const KernelBasis& basis);

// Line-delimited message log: {"type", "round", "sender", "payload"}.
class MessageLog {
 public:
  explicit MessageLog(std::ostream& out) : out_(out) {}
  void Record(const std::string& type, int round, const std::string& sender,
              const nlohmann::json& payload);

 private:
  std::ostream& out_;
};

struct ClientState {
  ClientShard shard;
  KernelMatrix kernel;
  WeightVector w;
  std::optional<ServerBroadcast> last_broadcast;
  // Global (s_bar, n) learned in the statistics round.
  FairnessStats stats;
  // Only for PenaltyMode::kLocal.
  Eigen::VectorXd local_phi_cov;
};

struct ServerState {
  int round = 0;
  int num_clients = 0;
  KernelBasis basis;
  FairnessStats stats;
  Eigen::VectorXd psi_theta;  // constant across rounds
  MixtureCoefficients alpha;
  WeightVector w_avg;
  Eigen::VectorXd phi_cov;
  // Last round's aggregate and LP, kept for diagnostics.
  std::vector<CoefficientBundle> bundles;
  std::optional<AlphaLp> last_lp;
  std::optional<LpSolution> last_solution;
  // psi_L . alpha before and after the last alpha update.
  double loss_before_update = 0.0;
  double loss_after_update = 0.0;
};

struct Federation {
  ServerState server;
  std::vector<ClientState> clients;
  ServerBroadcast broadcast;  // round 0
};

// Statistics round, basis selection, kernel precomputation, uniform
// feasible alpha^0 = 1 / sum_m psi_theta_m, w^0 = 0.
Federation InitProtocol(const std::vector<ClientShard>& shards,
                        const ProtocolConfig& cfg, MessageLog* log = nullptr);

CoefficientBundle ClientRound(ClientState& state, const ServerBroadcast& bc,
                              const ProtocolConfig& cfg);

ServerBroadcast ServerRound(ServerState& state,
                            const std::vector<CoefficientBundle>& bundles,
                            const ProtocolConfig& cfg);

// One synchronous round over every client, logging each message.
ServerBroadcast RunRound(Federation& fed, const ProtocolConfig& cfg,
                         MessageLog* log = nullptr);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_FEDERATION_H_
