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

#include "agnostic_fair/verify.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "agnostic_fair/errors.h"
#include "agnostic_fair/fairness.h"
#include "agnostic_fair/federation.h"
#include "agnostic_fair/kernel.h"
#include "agnostic_fair/lpsolve.h"
#include "agnostic_fair/model.h"
#include "agnostic_fair/synthetic.h"

namespace agnostic_fair {
namespace {

Eigen::VectorXd Uniform(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

ClientShard RandomShard(std::mt19937_64& rng, int id, Eigen::Index n, Eigen::Index dim) {
  std::bernoulli_distribution coin(0.5);
  ClientShard s;
  s.client_id = id;
  s.features.resize(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.features.row(i).head(dim - 1) = Uniform(rng, dim - 1, 0.0, 1.0).transpose();
    s.features(i, dim - 1) = 1.0;
  }
  s.labels.resize(n);
  s.sensitive.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.labels(i) = coin(rng) ? 1.0 : 0.0;
    s.sensitive(i) = coin(rng) ? 1.0 : 0.0;
  }
  return s;
}

SimplexOptions SimplexFor(const VerifyOptions& options) {
  SimplexOptions o;
  if (options.corrupt_lp_tolerance) {
    o.pivot_tolerance = *options.corrupt_lp_tolerance;
    o.feasibility_tolerance = *options.corrupt_lp_tolerance;
  }
  return o;
}

}  // namespace

const std::vector<std::string>& CheckNames() {
  static const std::vector<std::string> kNames = {"lp", "gradient", "aggregation"};
  return kNames;
}

CheckResult CheckLp(const VerifyOptions& options) {
  CheckResult r{"lp", true, ""};
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> size(1, 4);
  const SimplexOptions simplex = SimplexFor(options);
  double worst_gap = 0.0;
  double worst_violation = 0.0;
  int failures = 0;
  int checked = 0;
  while (checked < 100) {
    AlphaLp lp;
    const int m = size(rng);
    lp.objective = Uniform(rng, m, -1.0, 1.0);
    lp.equality = Uniform(rng, m, 0.05, 1.0);
    lp.fairness_row = Uniform(rng, m, -1.0, 1.0);
    lp.tau = 0.05;
    lp.box_upper = 5.0;
    LpSolution oracle = BruteForceOracle(lp);
    if (oracle.status != LpStatus::kOptimal) continue;
    ++checked;
    LpSolution sol = Solve(lp, simplex);
    const double gap = oracle.objective_value - sol.objective_value;
    const double viol = MaxViolation(lp, sol.alpha.alpha);
    worst_gap = std::max(worst_gap, std::abs(gap));
    worst_violation = std::max(worst_violation, viol);
    if (sol.status != LpStatus::kOptimal || std::abs(gap) > 1e-6 || viol > 1e-8) ++failures;
  }
  // Infeasible fairness rows: the relaxation must find the same slack.
  double worst_slack_gap = 0.0;
  for (int k = 0; k < 20; ++k) {
    AlphaLp lp;
    const int m = size(rng);
    lp.objective = Uniform(rng, m, -1.0, 1.0);
    lp.equality = Uniform(rng, m, 0.05, 1.0);
    lp.fairness_row = Uniform(rng, m, 1.0, 2.0);
    lp.tau = 0.05;
    lp.box_upper = 5.0;
    LpSolution oracle = BruteForceOracle(lp);
    LpSolution sol = Solve(lp, simplex);
    const double gap = std::abs(oracle.slack_used - sol.slack_used);
    worst_slack_gap = std::max(worst_slack_gap, gap);
    if (sol.status != oracle.status || gap > 1e-8 ||
        std::abs(oracle.objective_value - sol.objective_value) > 1e-6) {
      ++failures;
    }
  }
  r.passed = failures == 0;
  std::ostringstream d;
  d << "120 instances, failures=" << failures << " max|obj gap|=" << worst_gap
    << " max violation=" << worst_violation << " max|slack gap|=" << worst_slack_gap;
  r.detail = d.str();
  return r;
}

CheckResult CheckGradient(const VerifyOptions& options) {
  CheckResult r{"gradient", true, ""};
  std::mt19937_64 rng(options.seed + 1);
  const double h = 1e-6;
  double worst = 0.0;
  int failures = 0;
  for (double lambda : {0.0, 2.0, 100.0}) {
    for (int k = 0; k < 50; ++k) {
      ClientShard shard = RandomShard(rng, 0, 5, 4);
      Eigen::VectorXd theta = Uniform(rng, 5, 0.0, 3.0);
      WeightVector w = Uniform(rng, 4, -2.0, 2.0);
      PenaltySpec pen;
      pen.lambda = lambda;
      pen.tau = 0.05;
      pen.phi_c = Uniform(rng, 4, -0.5, 0.5);
      pen.n_total = 20;
      OptimizerSpec opt;
      Eigen::VectorXd g = LossGradient(w, shard, theta, pen, opt);
      Eigen::VectorXd fd(4);
      for (Eigen::Index j = 0; j < 4; ++j) {
        WeightVector wp = w, wm = w;
        wp(j) += h;
        wm(j) -= h;
        fd(j) = (LocalObjective(wp, shard, theta, pen, opt) -
                 LocalObjective(wm, shard, theta, pen, opt)) / (2.0 * h);
      }
      const double rel = (g - fd).norm() / std::max(1e-8, std::max(g.norm(), fd.norm()));
      worst = std::max(worst, rel);
      if (!(rel <= 1e-4)) ++failures;
    }
  }
  r.passed = failures == 0;
  std::ostringstream d;
  d << "150 instances, failures=" << failures << " max relative error=" << worst;
  r.detail = d.str();
  return r;
}

CheckResult CheckAggregation(const VerifyOptions& options) {
  CheckResult r{"aggregation", true, ""};
  std::mt19937_64 rng(options.seed + 2);
  const Eigen::Index dim = 4;
  std::vector<ClientShard> shards;
  for (int k = 0; k < 3; ++k) shards.push_back(RandomShard(rng, k, 6 + 3 * k, dim));

  ProtocolConfig cfg;
  cfg.basis_kind = BasisKind::kGaussian;
  cfg.num_centers = 5;
  cfg.sigma = 0.7;
  cfg.seed = options.seed;
  cfg.optimizer.local_epochs = 0;
  Federation fed = InitProtocol(shards, cfg);

  ServerBroadcast bc;
  bc.round = 0;
  bc.w_avg = Uniform(rng, dim, -1.0, 1.0);
  bc.alpha.alpha = Uniform(rng, cfg.num_centers, 0.0, cfg.bound);
  bc.phi_cov = Eigen::VectorXd::Zero(dim);
  const Eigen::Index m = static_cast<Eigen::Index>(cfg.num_centers);
  Eigen::VectorXd psi_l = Eigen::VectorXd::Zero(m), psi_t = psi_l, psi_c = psi_l;
  Eigen::VectorXd phi_c = Eigen::VectorXd::Zero(dim);
  for (auto& c : fed.clients) {
    CoefficientBundle b = ClientRound(c, bc, cfg);
    psi_l += b.psi_loss;
    psi_t += b.psi_theta;
    psi_c += b.psi_cov;
    phi_c += b.phi_cov;
  }

  // Pooled data, evaluated sample by sample.
  std::size_t n = 0;
  double s_sum = 0.0;
  for (const auto& s : shards) {
    n += s.size();
    s_sum += s.sensitive.sum();
  }
  const double s_bar = s_sum / static_cast<double>(n);
  const KernelBasis& basis = fed.server.basis;
  Eigen::VectorXd ref_l = Eigen::VectorXd::Zero(m), ref_t = ref_l, ref_c = ref_l;
  Eigen::VectorXd ref_phi = Eigen::VectorXd::Zero(dim);
  const WeightVector& w = bc.w_avg;
  for (const auto& s : shards) {
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(s.size()); ++i) {
      Eigen::VectorXd x = s.features.row(i).transpose();
      double margin = w.dot(x);
      double p = 1.0 / (1.0 + std::exp(-margin));
      double y = s.labels(i);
      double loss = -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
      double theta = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        double dist2 = (basis.centers.row(j).transpose() - x).squaredNorm();
        double kv = std::exp(-dist2 / (2.0 * basis.sigma * basis.sigma));
        theta += bc.alpha.alpha(j) * kv;
        ref_l(j) += kv * loss;
        ref_t(j) += kv;
        ref_c(j) += (s.sensitive(i) - s_bar) * kv * margin;
      }
      ref_phi += (s.sensitive(i) - s_bar) * theta * x;
    }
  }
  const double nd = static_cast<double>(n);
  ref_l /= nd;
  ref_t /= nd;
  ref_c /= nd;
  ref_phi /= nd;
  const double err = std::max({(psi_l - ref_l).cwiseAbs().maxCoeff(),
                               (psi_t - ref_t).cwiseAbs().maxCoeff(),
                               (psi_c - ref_c).cwiseAbs().maxCoeff(),
                               (phi_c - ref_phi).cwiseAbs().maxCoeff()});
  r.passed = err <= 1e-10;
  std::ostringstream d;
  d << "3 clients, M=" << m << ", max abs error=" << err;
  r.detail = d.str();
  return r;
}

std::vector<CheckResult> RunChecks(const std::vector<std::string>& only,
                                   const VerifyOptions& options) {
  for (const auto& name : only) {
    if (std::find(CheckNames().begin(), CheckNames().end(), name) == CheckNames().end()) {
      throw ConfigError("unknown check '" + name + "' (lp, gradient, aggregation)");
    }
  }
  auto wanted = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  std::vector<CheckResult> results;
  auto guarded = [&](const std::string& name, CheckResult (*fn)(const VerifyOptions&)) {
    if (!wanted(name)) return;
    try {
      results.push_back(fn(options));
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };
  guarded("lp", &CheckLp);
  guarded("gradient", &CheckGradient);
  guarded("aggregation", &CheckAggregation);
  return results;
}

}  // namespace agnostic_fair
