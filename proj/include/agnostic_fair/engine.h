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

#ifndef AGNOSTIC_FAIR_ENGINE_H_
#define AGNOSTIC_FAIR_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agnostic_fair/dataset.h"
#include "agnostic_fair/federation.h"
#include "agnostic_fair/synthetic.h"

namespace agnostic_fair {

enum class AlgorithmKind {
  kFL,
  kFairFL,
  kAFL,
  kAgnosticFair,
  kAgnosticFairA,
  kAgnosticFairB,
  kLocalFair,
};

const std::vector<AlgorithmKind>& AllAlgorithms();
// Canonical lower-case name, e.g. "agnosticfair_a".
std::string AlgorithmName(AlgorithmKind kind);
// Case-insensitive; '-' and '_' are interchangeable. Throws ConfigError
// listing the valid names.
AlgorithmKind ParseAlgorithm(const std::string& name);

struct Hyperparameters {
  double lambda = 2.0;
  double tau = 0.05;
  double bound = 5.0;
  double sigma = 1.0;
  std::size_t num_centers = 200;
  int rounds = 30;
  int local_epochs = 200;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
  double clamp_eps = 1e-12;
  bool normalize_loss_globally = false;
  bool parallel_clients = false;
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kAgnosticFair;
  Hyperparameters hyper;
  void Validate() const;
  ProtocolConfig ToProtocol() const;
};

struct RoundMetrics {
  int round = 0;
  double train_acc = 0.0;
  double test_acc = 0.0;
  double train_rd = 0.0;
  double test_rd = 0.0;
  // NaN where a client's test view lacks one sensitive group.
  std::vector<double> per_client_test_rd;
  // Global reweighted covariance w.phi_C under the broadcast alpha.
  double covariance = 0.0;
  // psi_theta . alpha after the server step.
  double sum_to_one = 1.0;
  // psi_L . alpha with the new w, before and after the alpha update.
  double loss_before_update = 0.0;
  double loss_after_update = 0.0;
  std::string lp_status;
  double lp_slack = 0.0;
};

struct RunResult {
  AlgorithmSpec spec;
  std::vector<RoundMetrics> per_round;
  // Metrics of the final global model; round 0 when no round ran.
  RoundMetrics final;
  Eigen::VectorXd alpha_final;
  WeightVector w_final;
  // Per-round averaged weights, w_history[t] after round t (t = 0 is w^0).
  std::vector<WeightVector> w_history;
  bool completed = false;
  std::string error;
};

struct RunOptions {
  MessageLog* log = nullptr;
  // Receives one LP dump per server round.
  std::ostream* lp_dump = nullptr;
};

// Evaluates w on the prepared train/test split.
RoundMetrics Evaluate(const WeightVector& w, const PreparedData& data);

// Runs T rounds. Errors inside a round stop the run; the rounds completed so
// far are returned with completed = false and the message in `error`.
RunResult Run(const AlgorithmSpec& spec, const PreparedData& data,
              const RunOptions& options = {});

// Plain federated averaging with an unweighted local logistic fit, written
// without the kernel machinery. Returns w^0 .. w^T.
std::vector<WeightVector> RunAlgorithm1(const std::vector<ClientShard>& shards,
                                        const Hyperparameters& hyper);

// Per-round CSV: round, train_acc, test_acc, train_rd, test_rd,
// client_<k>_test_rd...
void WriteRoundCsv(const std::filesystem::path& path, const RunResult& result);
void WriteRunJson(const std::filesystem::path& path, const RunResult& result,
                  const std::vector<std::string>& feature_names);

// Where the data for a grid comes from.
struct DataSource {
  std::optional<DatasetConfig> dataset;
  std::optional<SyntheticSpec> synthetic;
};

struct SplitVariant {
  std::string name;
  ShiftSplitSpec spec;
};

struct ExperimentConfig {
  DataSource source;
  std::vector<SplitVariant> splits;
  std::vector<AlgorithmKind> algorithms;
  // Empty keeps each split's own client count.
  std::vector<int> num_clients;
  Hyperparameters hyper;
  int repetitions = 1;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir;
};

ExperimentConfig ParseExperimentConfig(const std::string& json_text,
                                       const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Loads the source and applies the split with the given seed.
PreparedData PrepareData(const DataSource& source, ShiftSplitSpec split,
                         std::uint64_t seed);

struct SummaryRow {
  std::string algorithm;
  std::string split;
  int num_clients = 0;
  int repetitions_ok = 0;
  int repetitions_failed = 0;
  double train_acc = 0.0;
  double test_acc = 0.0;
  double train_rd = 0.0;
  double test_rd = 0.0;
  double test_acc_std = 0.0;
  double test_rd_std = 0.0;
  std::vector<std::string> errors;
};

struct GridOptions {
  // Write per-run round CSVs into output_dir/runs.
  bool write_runs = true;
};

// Runs every (split, clients, algorithm) cell for `repetitions` seeds,
// seed = base_seed + r. A failing repetition is recorded and skipped.
std::vector<SummaryRow> RunGrid(const ExperimentConfig& config,
                                const GridOptions& options = {});

void WriteSummaryCsv(const std::filesystem::path& path,
                     const std::vector<SummaryRow>& rows);
void WriteSummaryJson(const std::filesystem::path& path,
                      const std::vector<SummaryRow>& rows);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_ENGINE_H_
