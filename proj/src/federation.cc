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

#include "agnostic_fair/federation.h"

#include <future>
#include <ostream>
#include <set>

#include "agnostic_fair/errors.h"
#include "spdlog/spdlog.h"

namespace agnostic_fair {
namespace {

using json = nlohmann::json;

json Vec(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string ClientName(int id) { return "client_" + std::to_string(id); }

void CheckFinite(const CoefficientBundle& b) {
  auto bad = [](const Eigen::VectorXd& v) { return !v.allFinite(); };
  if (bad(b.psi_loss) || bad(b.psi_theta) || bad(b.psi_cov) ||
      bad(b.phi_cov) || bad(b.w_local)) {
    throw NumericalError("client " + std::to_string(b.client_id) +
                         " produced a non-finite coefficient in round " +
                         std::to_string(b.round));
  }
}

Eigen::VectorXd ThetaForPenalty(const ClientState& state,
                                const MixtureCoefficients& alpha,
                                PenaltyMode mode) {
  if (mode == PenaltyMode::kUnweighted) {
    return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(state.shard.size()));
  }
  return Theta(state.kernel, alpha);
}

// phi_{C,k} the client uploads for the next round.
Eigen::VectorXd CovarianceUpload(const ClientState& state,
                                 const MixtureCoefficients& alpha,
                                 PenaltyMode mode) {
  if (mode == PenaltyMode::kReweighted || mode == PenaltyMode::kUnweighted) {
    return CovarianceCoeffW(state.shard, ThetaForPenalty(state, alpha, mode),
                            state.stats);
  }
  return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(state.shard.dim()));
}

}  // namespace

json ToJson(const StatsReport& m) {
  return {{"client_id", m.client_id},
          {"n", m.counts.n},
          {"sensitive_sum", m.counts.sensitive_sum}};
}

json ToJson(const StatsBroadcast& m) {
  return {{"s_bar", m.s_bar}, {"n_total", m.n_total}};
}

json ToJson(const CenterNomination& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows.rows(); ++i) {
    rows.push_back(Vec(m.rows.row(i).transpose()));
  }
  return {{"client_id", m.client_id}, {"rows", rows}};
}

json ToJson(const ThetaMassReport& m) {
  return {{"client_id", m.client_id}, {"psi_theta", Vec(m.psi_theta)}};
}

json ToJson(const CovarianceReport& m) {
  return {{"client_id", m.client_id}, {"phi_cov", Vec(m.phi_cov)}};
}

json ToJson(const CoefficientBundle& m) {
  return {{"client_id", m.client_id},   {"round", m.round},
          {"psi_loss", Vec(m.psi_loss)}, {"psi_theta", Vec(m.psi_theta)},
          {"psi_cov", Vec(m.psi_cov)},   {"phi_cov", Vec(m.phi_cov)},
          {"w_local", Vec(m.w_local)}};
}

json ToJson(const ServerBroadcast& m) {
  return {{"round", m.round},
          {"w_avg", Vec(m.w_avg)},
          {"alpha", Vec(m.alpha.alpha)},
          {"phi_cov", Vec(m.phi_cov)}};
}

json ToJson(const KernelBasis& basis) {
  json centers = json::array();
  for (Eigen::Index i = 0; i < basis.centers.rows(); ++i) {
    centers.push_back(Vec(basis.centers.row(i).transpose()));
  }
  return {{"kind", static_cast<int>(basis.kind)},
          {"sigma", basis.sigma},
          {"bound", basis.bound},
          {"num_clients", basis.num_clients},
          {"centers", centers}};
}

void MessageLog::Record(const std::string& type, int round,
                        const std::string& sender, const json& payload) {
  json line{{"type", type}, {"round", round}, {"sender", sender}, {"payload", payload}};
  out_ << line.dump() << '\n';
}

Federation InitProtocol(const std::vector<ClientShard>& shards,
                        const ProtocolConfig& cfg, MessageLog* log) {
  if (shards.empty()) throw ConfigError("init needs at least one client shard");
  for (std::size_t k = 0; k < shards.size(); ++k) {
    if (shards[k].size() == 0) {
      throw ConfigError("client " + std::to_string(k) + " has no samples");
    }
    if (shards[k].client_id != static_cast<int>(k)) {
      throw ConfigError("client ids must be 0..p-1 in order");
    }
  }
  Federation fed;
  ServerState& server = fed.server;
  server.num_clients = static_cast<int>(shards.size());
  for (const auto& s : shards) {
    ClientState c;
    c.shard = s;
    fed.clients.push_back(std::move(c));
  }

  // Statistics round.
  std::vector<ClientCounts> counts;
  for (const auto& c : fed.clients) {
    StatsReport report{c.shard.client_id, CountSensitive(c.shard)};
    if (log) log->Record("stats_report", -1, ClientName(report.client_id), ToJson(report));
    counts.push_back(report.counts);
  }
  server.stats = FairnessStats::FromCounts(counts);
  StatsBroadcast stats_bc{server.stats.s_bar, server.stats.n_total};
  if (log) log->Record("stats_broadcast", -1, "server", ToJson(stats_bc));
  for (auto& c : fed.clients) c.stats = server.stats;

  // Basis.
  switch (cfg.basis_kind) {
    case BasisKind::kConstant:
      server.basis = ConstantBasis(cfg.bound);
      break;
    case BasisKind::kClientIndicator:
      server.basis = ClientWeightBasis(server.num_clients, cfg.bound);
      break;
    case BasisKind::kGaussian: {
      std::vector<std::size_t> sizes;
      for (const auto& c : counts) sizes.push_back(c.n);
      std::vector<std::size_t> quotas = BasisQuotas(sizes, cfg.num_centers);
      server.basis.kind = BasisKind::kGaussian;
      server.basis.sigma = cfg.sigma;
      server.basis.bound = cfg.bound;
      server.basis.centers.resize(static_cast<Eigen::Index>(cfg.num_centers),
                                  static_cast<Eigen::Index>(shards[0].dim()));
      Eigen::Index row = 0;
      for (std::size_t k = 0; k < fed.clients.size(); ++k) {
        if (quotas[k] == 0) continue;
        CenterNomination nom{static_cast<int>(k),
                             NominateCenters(fed.clients[k].shard, quotas[k], cfg.seed)};
        if (log) log->Record("center_nomination", -1, ClientName(nom.client_id), ToJson(nom));
        server.basis.centers.middleRows(row, nom.rows.rows()) = nom.rows;
        row += nom.rows.rows();
      }
      server.basis.Validate();
      if (log) log->Record("basis_broadcast", -1, "server", ToJson(server.basis));
      break;
    }
  }

  // Kernel matrices and the sum-to-one row.
  server.psi_theta = Eigen::VectorXd::Zero(server.basis.size());
  const double n = static_cast<double>(server.stats.n_total);
  for (auto& c : fed.clients) {
    c.kernel = ComputeKernelMatrix(c.shard, server.basis);
    ThetaMassReport report{c.shard.client_id, c.kernel.values.colwise().sum().transpose() / n};
    if (log) log->Record("theta_mass_report", -1, ClientName(report.client_id), ToJson(report));
    server.psi_theta += report.psi_theta;
    if (cfg.penalty == PenaltyMode::kLocal) {
      c.local_phi_cov = LocalCovarianceCoeffW(c.shard);
    }
  }
  const double mass = server.psi_theta.sum();
  if (!(mass > 0.0)) {
    throw ConfigError("sum-to-one row is all zeros; no feasible initial alpha");
  }
  server.alpha.alpha = Eigen::VectorXd::Constant(server.basis.size(), 1.0 / mass);
  if (server.alpha.alpha(0) > cfg.bound) {
    spdlog::warn("uniform initial alpha {} exceeds the bound {}",
                 server.alpha.alpha(0), cfg.bound);
  }

  // phi_C^0 under alpha^0.
  const auto dim = static_cast<Eigen::Index>(shards[0].dim());
  server.phi_cov = Eigen::VectorXd::Zero(dim);
  for (const auto& c : fed.clients) {
    CovarianceReport report{c.shard.client_id,
                            CovarianceUpload(c, server.alpha, cfg.penalty)};
    if (log) log->Record("covariance_report", -1, ClientName(report.client_id), ToJson(report));
    server.phi_cov += report.phi_cov;
  }

  server.w_avg = WeightVector::Zero(dim);
  server.round = 0;
  fed.broadcast = ServerBroadcast{0, server.w_avg, server.alpha, server.phi_cov};
  for (auto& c : fed.clients) c.w = server.w_avg;
  if (log) log->Record("server_broadcast", 0, "server", ToJson(fed.broadcast));
  return fed;
}

CoefficientBundle ClientRound(ClientState& state, const ServerBroadcast& bc,
                              const ProtocolConfig& cfg) {
  if (state.last_broadcast && bc.round != state.last_broadcast->round + 1) {
    throw ProtocolError("client " + std::to_string(state.shard.client_id) +
                        " expected round " +
                        std::to_string(state.last_broadcast->round + 1) +
                        ", received " + std::to_string(bc.round));
  }
  if (bc.alpha.alpha.size() != state.kernel.cols()) {
    throw DimensionError("broadcast alpha does not match the kernel basis");
  }
  state.last_broadcast = bc;
  const double n = static_cast<double>(state.stats.n_total);

  // (1) weights under the broadcast alpha
  Eigen::VectorXd theta = Theta(state.kernel, bc.alpha);

  // (2) local fit from the averaged model
  PenaltySpec penalty;
  penalty.n_total = state.stats.n_total;
  penalty.tau = cfg.tau;
  switch (cfg.penalty) {
    case PenaltyMode::kNone:
      break;
    case PenaltyMode::kReweighted:
    case PenaltyMode::kUnweighted:
      penalty.lambda = cfg.lambda;
      penalty.phi_c = bc.phi_cov;
      break;
    case PenaltyMode::kLocal:
      penalty.lambda = cfg.lambda;
      penalty.phi_c = state.local_phi_cov;
      break;
  }
  state.w = FitLocal(bc.w_avg, state.shard, theta, penalty, cfg.optimizer);

  // (3) alpha-side coefficients at the new w, phi under the broadcast alpha
  CoefficientBundle b;
  b.client_id = state.shard.client_id;
  b.round = bc.round;
  LossReport loss = WeightedLoss(state.w, state.shard, theta, state.stats.n_total,
                                 cfg.optimizer.clamp_eps);
  b.psi_loss = state.kernel.values.transpose() * loss.per_sample_loss / n;
  b.psi_theta = state.kernel.values.colwise().sum().transpose() / n;
  b.psi_cov = CovarianceCoeffAlpha(state.shard, state.kernel, state.w, state.stats);
  b.phi_cov = CovarianceUpload(state, bc.alpha, cfg.penalty);
  b.w_local = state.w;
  CheckFinite(b);
  return b;
}

ServerBroadcast ServerRound(ServerState& state,
                            const std::vector<CoefficientBundle>& bundles,
                            const ProtocolConfig& cfg) {
  if (static_cast<int>(bundles.size()) != state.num_clients) {
    throw ProtocolError("server expected " + std::to_string(state.num_clients) +
                        " bundles, received " + std::to_string(bundles.size()));
  }
  std::set<int> seen;
  for (const auto& b : bundles) {
    if (b.round != state.round) {
      throw ProtocolError("bundle from client " + std::to_string(b.client_id) +
                          " is for round " + std::to_string(b.round) +
                          ", server is in round " + std::to_string(state.round));
    }
    if (b.client_id < 0 || b.client_id >= state.num_clients ||
        !seen.insert(b.client_id).second) {
      throw ProtocolError("duplicate or unknown client id " +
                          std::to_string(b.client_id));
    }
    CheckFinite(b);
  }

  const Eigen::Index m = state.alpha.alpha.size();
  const Eigen::Index dim = bundles.front().w_local.size();
  Eigen::VectorXd psi_loss = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd psi_theta = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd psi_cov = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd phi_cov = Eigen::VectorXd::Zero(dim);
  WeightVector w_sum = WeightVector::Zero(dim);
  for (const auto& b : bundles) {
    psi_loss += b.psi_loss;
    psi_theta += b.psi_theta;
    psi_cov += b.psi_cov;
    phi_cov += b.phi_cov;
    w_sum += b.w_local;
  }

  state.loss_before_update = psi_loss.dot(state.alpha.alpha);
  if (cfg.optimize_alpha) {
    AlphaLp lp;
    lp.objective = psi_loss;
    lp.equality = psi_theta;
    if (cfg.lp_fairness_row) lp.fairness_row = psi_cov;
    lp.tau = cfg.tau;
    lp.box_upper = cfg.bound;
    LpSolution sol = Solve(lp, cfg.simplex);
    if (sol.status == LpStatus::kError) {
      throw NumericalError("alpha LP failed in round " +
                           std::to_string(state.round) + ": " + sol.message);
    }
    if (sol.status == LpStatus::kInfeasibleRelaxed) {
      spdlog::warn("round {}: fairness row infeasible, relaxed by slack {:.3g}",
                   state.round, sol.slack_used);
    }
    state.alpha = sol.alpha;
    state.last_lp = std::move(lp);
    state.last_solution = std::move(sol);
  }
  state.loss_after_update = psi_loss.dot(state.alpha.alpha);

  state.psi_theta = psi_theta;
  state.w_avg = w_sum / static_cast<double>(bundles.size());
  state.phi_cov = phi_cov;
  state.bundles = bundles;
  ++state.round;
  return ServerBroadcast{state.round, state.w_avg, state.alpha, state.phi_cov};
}

ServerBroadcast RunRound(Federation& fed, const ProtocolConfig& cfg,
                         MessageLog* log) {
  const ServerBroadcast bc = fed.broadcast;
  std::vector<CoefficientBundle> bundles(fed.clients.size());
  if (cfg.parallel_clients && fed.clients.size() > 1) {
    std::vector<std::future<CoefficientBundle>> jobs;
    for (auto& c : fed.clients) {
      jobs.push_back(std::async(std::launch::async,
                                [&c, &bc, &cfg] { return ClientRound(c, bc, cfg); }));
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) bundles[k] = jobs[k].get();
  } else {
    for (std::size_t k = 0; k < fed.clients.size(); ++k) {
      bundles[k] = ClientRound(fed.clients[k], bc, cfg);
    }
  }
  if (log) {
    for (const auto& b : bundles) {
      log->Record("coefficient_bundle", b.round, ClientName(b.client_id), ToJson(b));
    }
  }
  fed.broadcast = ServerRound(fed.server, bundles, cfg);
  if (log) log->Record("server_broadcast", fed.broadcast.round, "server", ToJson(fed.broadcast));
  return fed.broadcast;
}

}  // namespace agnostic_fair
