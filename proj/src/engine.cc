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

#include "agnostic_fair/engine.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "agnostic_fair/errors.h"
#include "agnostic_fair/fairness.h"
#include "json.hpp"
#include "spdlog/spdlog.h"

namespace agnostic_fair {
namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Normalize(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '-') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

double SafeRd(const Eigen::VectorXd& pred, const Eigen::VectorXd& sensitive) {
  try {
    return RiskDifference(pred, sensitive).rd;
  } catch (const UndefinedMetricError&) {
    return kNaN;
  }
}

json NumberOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json MetricsToJson(const RoundMetrics& m) {
  json per_client = json::array();
  for (double v : m.per_client_test_rd) per_client.push_back(NumberOrNull(v));
  return {{"round", m.round},
          {"train_acc", m.train_acc},
          {"test_acc", m.test_acc},
          {"train_rd", NumberOrNull(m.train_rd)},
          {"test_rd", NumberOrNull(m.test_rd)},
          {"per_client_test_rd", per_client},
          {"covariance", m.covariance},
          {"sum_to_one", m.sum_to_one},
          {"lp_status", m.lp_status},
          {"lp_slack", m.lp_slack}};
}

json HyperToJson(const Hyperparameters& h) {
  return {{"lambda", h.lambda},
          {"tau", h.tau},
          {"bound", h.bound},
          {"sigma", h.sigma},
          {"num_centers", h.num_centers},
          {"rounds", h.rounds},
          {"local_epochs", h.local_epochs},
          {"learning_rate", h.learning_rate},
          {"seed", h.seed},
          {"clamp_eps", h.clamp_eps},
          {"normalize_loss_globally", h.normalize_loss_globally}};
}

Hyperparameters HyperFromJson(const json& j, Hyperparameters h) {
  h.lambda = j.value("lambda", h.lambda);
  h.tau = j.value("tau", h.tau);
  h.bound = j.value("bound", h.bound);
  h.sigma = j.value("sigma", h.sigma);
  h.num_centers = j.value("num_centers", h.num_centers);
  h.rounds = j.value("rounds", h.rounds);
  h.local_epochs = j.value("local_epochs", h.local_epochs);
  h.learning_rate = j.value("learning_rate", h.learning_rate);
  h.seed = j.value("seed", h.seed);
  h.clamp_eps = j.value("clamp_eps", h.clamp_eps);
  h.normalize_loss_globally =
      j.value("normalize_loss_globally", h.normalize_loss_globally);
  h.parallel_clients = j.value("parallel_clients", h.parallel_clients);
  return h;
}

// Unweighted mean log-loss of one shard, divided by n_k.
double PlainObjective(const WeightVector& w, const ClientShard& shard,
                      double clamp_eps) {
  Eigen::VectorXd z = shard.features * w;
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    double zi = std::clamp(z(i), -kLogitClamp, kLogitClamp);
    double p = std::clamp(1.0 / (1.0 + std::exp(-zi)), clamp_eps, 1.0 - clamp_eps);
    double y = shard.labels(i);
    total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
  }
  return total / static_cast<double>(shard.size());
}

Eigen::VectorXd PlainGradient(const WeightVector& w, const ClientShard& shard) {
  Eigen::VectorXd z = shard.features * w;
  Eigen::VectorXd r(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    double zi = std::clamp(z(i), -kLogitClamp, kLogitClamp);
    r(i) = 1.0 / (1.0 + std::exp(-zi)) - shard.labels(i);
  }
  return shard.features.transpose() * r / static_cast<double>(shard.size());
}

WeightVector PlainLocalFit(WeightVector w, const ClientShard& shard,
                           const Hyperparameters& h) {
  const int max_halvings = OptimizerSpec{}.max_halvings;
  double f = PlainObjective(w, shard, h.clamp_eps);
  for (int epoch = 0; epoch < h.local_epochs; ++epoch) {
    Eigen::VectorXd g = PlainGradient(w, shard);
    double rate = h.learning_rate;
    bool moved = false;
    for (int k = 0; k <= max_halvings; ++k) {
      WeightVector cand = w - rate * g;
      double fc = PlainObjective(cand, shard, h.clamp_eps);
      if (fc <= f) {
        w = cand;
        f = fc;
        moved = true;
        break;
      }
      rate *= 0.5;
    }
    if (!moved) break;
  }
  return w;
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

std::string ClientsLabel(int clients) { return std::to_string(clients); }

}  // namespace

const std::vector<AlgorithmKind>& AllAlgorithms() {
  static const std::vector<AlgorithmKind> kAll = {
      AlgorithmKind::kFL,           AlgorithmKind::kFairFL,
      AlgorithmKind::kAFL,          AlgorithmKind::kAgnosticFair,
      AlgorithmKind::kAgnosticFairA, AlgorithmKind::kAgnosticFairB,
      AlgorithmKind::kLocalFair};
  return kAll;
}

std::string AlgorithmName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kFL: return "fl";
    case AlgorithmKind::kFairFL: return "fairfl";
    case AlgorithmKind::kAFL: return "afl";
    case AlgorithmKind::kAgnosticFair: return "agnosticfair";
    case AlgorithmKind::kAgnosticFairA: return "agnosticfair_a";
    case AlgorithmKind::kAgnosticFairB: return "agnosticfair_b";
    case AlgorithmKind::kLocalFair: return "localfair";
  }
  return "unknown";
}

AlgorithmKind ParseAlgorithm(const std::string& name) {
  const std::string key = Normalize(name);
  for (AlgorithmKind k : AllAlgorithms()) {
    if (AlgorithmName(k) == key) return k;
  }
  if (key == "afl_client_weights") return AlgorithmKind::kAFL;
  std::string valid;
  for (AlgorithmKind k : AllAlgorithms()) {
    if (!valid.empty()) valid += ", ";
    valid += AlgorithmName(k);
  }
  throw ConfigError("unknown algorithm '" + name + "'; valid names: " + valid);
}

void AlgorithmSpec::Validate() const {
  const Hyperparameters& h = hyper;
  if (h.rounds < 0) throw ConfigError("rounds must be >= 0");
  if (h.local_epochs < 0) throw ConfigError("local_epochs must be >= 0");
  if (!(h.learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(h.bound > 0.0)) throw ConfigError("bound must be > 0");
  if (!(h.sigma > 0.0)) throw ConfigError("sigma must be > 0");
  if (!(h.tau >= 0.0)) throw ConfigError("tau must be >= 0");
  if (!(h.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(h.clamp_eps > 0.0 && h.clamp_eps < 0.5)) {
    throw ConfigError("clamp_eps must lie in (0, 0.5)");
  }
  const bool gaussian = kind == AlgorithmKind::kAgnosticFair ||
                        kind == AlgorithmKind::kAgnosticFairA ||
                        kind == AlgorithmKind::kAgnosticFairB;
  if (gaussian && h.num_centers == 0) throw ConfigError("num_centers must be >= 1");
}

ProtocolConfig AlgorithmSpec::ToProtocol() const {
  ProtocolConfig cfg;
  cfg.num_centers = hyper.num_centers;
  cfg.sigma = hyper.sigma;
  cfg.bound = hyper.bound;
  cfg.lambda = hyper.lambda;
  cfg.tau = hyper.tau;
  cfg.seed = hyper.seed;
  cfg.parallel_clients = hyper.parallel_clients;
  cfg.optimizer.learning_rate = hyper.learning_rate;
  cfg.optimizer.local_epochs = hyper.local_epochs;
  cfg.optimizer.clamp_eps = hyper.clamp_eps;
  cfg.optimizer.normalize_loss_globally = hyper.normalize_loss_globally;
  switch (kind) {
    case AlgorithmKind::kFL:
      cfg.basis_kind = BasisKind::kConstant;
      cfg.optimize_alpha = false;
      cfg.penalty = PenaltyMode::kNone;
      cfg.lambda = 0.0;
      break;
    case AlgorithmKind::kFairFL:
      cfg.basis_kind = BasisKind::kConstant;
      cfg.optimize_alpha = false;
      cfg.penalty = PenaltyMode::kReweighted;
      break;
    case AlgorithmKind::kAFL:
      cfg.basis_kind = BasisKind::kClientIndicator;
      cfg.lp_fairness_row = false;
      cfg.penalty = PenaltyMode::kNone;
      cfg.lambda = 0.0;
      break;
    case AlgorithmKind::kAgnosticFair:
      cfg.basis_kind = BasisKind::kGaussian;
      cfg.penalty = PenaltyMode::kReweighted;
      break;
    case AlgorithmKind::kAgnosticFairA:
      cfg.basis_kind = BasisKind::kGaussian;
      cfg.lp_fairness_row = false;
      cfg.penalty = PenaltyMode::kNone;
      cfg.lambda = 0.0;
      break;
    case AlgorithmKind::kAgnosticFairB:
      cfg.basis_kind = BasisKind::kGaussian;
      cfg.lp_fairness_row = false;
      cfg.penalty = PenaltyMode::kUnweighted;
      break;
    case AlgorithmKind::kLocalFair:
      cfg.basis_kind = BasisKind::kConstant;
      cfg.optimize_alpha = false;
      cfg.penalty = PenaltyMode::kLocal;
      break;
  }
  return cfg;
}

RoundMetrics Evaluate(const WeightVector& w, const PreparedData& data) {
  RoundMetrics m;
  Eigen::VectorXd train_pred = PredictLabels(w, data.train.features);
  Eigen::VectorXd test_pred = PredictLabels(w, data.test.features);
  m.train_acc = Accuracy(w, data.train.features, data.train.labels);
  m.test_acc = Accuracy(w, data.test.features, data.test.labels);
  m.train_rd = SafeRd(train_pred, data.train.sensitive);
  m.test_rd = SafeRd(test_pred, data.test.sensitive);
  for (const auto& view : data.client_test_views) {
    Eigen::VectorXd pred(static_cast<Eigen::Index>(view.size()));
    Eigen::VectorXd sens(static_cast<Eigen::Index>(view.size()));
    for (std::size_t i = 0; i < view.size(); ++i) {
      pred(static_cast<Eigen::Index>(i)) = test_pred(static_cast<Eigen::Index>(view[i]));
      sens(static_cast<Eigen::Index>(i)) =
          data.test.sensitive(static_cast<Eigen::Index>(view[i]));
    }
    m.per_client_test_rd.push_back(SafeRd(pred, sens));
  }
  return m;
}

RunResult Run(const AlgorithmSpec& spec, const PreparedData& data,
              const RunOptions& options) {
  spec.Validate();
  RunResult result;
  result.spec = spec;
  const ProtocolConfig cfg = spec.ToProtocol();
  const std::string name = AlgorithmName(spec.kind);
  try {
    Federation fed = InitProtocol(data.shards, cfg, options.log);
    result.w_final = fed.server.w_avg;
    result.alpha_final = fed.server.alpha.alpha;
    result.w_history.push_back(fed.server.w_avg);
    result.final = Evaluate(fed.server.w_avg, data);
    result.final.sum_to_one = fed.server.psi_theta.dot(fed.server.alpha.alpha);
    for (int t = 1; t <= spec.hyper.rounds; ++t) {
      RunRound(fed, cfg, options.log);
      const ServerState& s = fed.server;
      RoundMetrics m = Evaluate(s.w_avg, data);
      m.round = t;
      m.covariance = s.w_avg.dot(s.phi_cov);
      m.sum_to_one = s.psi_theta.dot(s.alpha.alpha);
      m.loss_before_update = s.loss_before_update;
      m.loss_after_update = s.loss_after_update;
      if (s.last_solution && cfg.optimize_alpha) {
        m.lp_status = LpStatusName(s.last_solution->status);
        m.lp_slack = s.last_solution->slack_used;
      } else {
        m.lp_status = "fixed";
      }
      if (options.lp_dump != nullptr && s.last_lp && cfg.optimize_alpha) {
        *options.lp_dump << "# " << name << " round " << t << '\n';
        WriteLpDump(*options.lp_dump, *s.last_lp);
      }
      spdlog::debug("{} round {}: train_acc={:.4f} test_acc={:.4f} test_rd={:.4f} "
                    "cov={:.4g} lp={}",
                    name, t, m.train_acc, m.test_acc, m.test_rd, m.covariance,
                    m.lp_status);
      result.per_round.push_back(m);
      result.final = m;
      result.w_final = s.w_avg;
      result.alpha_final = s.alpha.alpha;
      result.w_history.push_back(s.w_avg);
    }
    result.completed = true;
  } catch (const std::exception& e) {
    result.error = e.what();
    spdlog::error("{} stopped after {} rounds: {}", name, result.per_round.size(),
                  e.what());
  }
  return result;
}

std::vector<WeightVector> RunAlgorithm1(const std::vector<ClientShard>& shards,
                                        const Hyperparameters& hyper) {
  if (shards.empty()) throw ConfigError("no client shards");
  const auto dim = shards.front().features.cols();
  std::vector<WeightVector> history;
  WeightVector w = WeightVector::Zero(dim);
  history.push_back(w);
  for (int t = 0; t < hyper.rounds; ++t) {
    WeightVector sum = WeightVector::Zero(dim);
    for (const auto& shard : shards) sum += PlainLocalFit(w, shard, hyper);
    w = sum / static_cast<double>(shards.size());
    history.push_back(w);
  }
  return history;
}

void WriteRoundCsv(const std::filesystem::path& path, const RunResult& result) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  std::size_t clients = result.final.per_client_test_rd.size();
  out << "round,train_acc,test_acc,train_rd,test_rd";
  for (std::size_t k = 0; k < clients; ++k) out << ",client_" << k << "_test_rd";
  out << ",covariance,sum_to_one,lp_status,lp_slack\n";
  out.precision(10);
  for (const auto& m : result.per_round) {
    out << m.round << ',' << m.train_acc << ',' << m.test_acc << ',' << m.train_rd
        << ',' << m.test_rd;
    for (std::size_t k = 0; k < clients; ++k) {
      out << ',';
      if (k < m.per_client_test_rd.size()) out << m.per_client_test_rd[k];
    }
    out << ',' << m.covariance << ',' << m.sum_to_one << ',' << m.lp_status << ','
        << m.lp_slack << '\n';
  }
}

void WriteRunJson(const std::filesystem::path& path, const RunResult& result,
                  const std::vector<std::string>& feature_names) {
  json w = json::object();
  for (Eigen::Index j = 0; j < result.w_final.size(); ++j) {
    std::string key = static_cast<std::size_t>(j) < feature_names.size()
                          ? feature_names[static_cast<std::size_t>(j)]
                          : "w" + std::to_string(j);
    w[key] = result.w_final(j);
  }
  json doc{{"algorithm", AlgorithmName(result.spec.kind)},
           {"hyper", HyperToJson(result.spec.hyper)},
           {"completed", result.completed},
           {"rounds_run", result.per_round.size()},
           {"final", MetricsToJson(result.final)},
           {"alpha_final", std::vector<double>(result.alpha_final.data(),
                                               result.alpha_final.data() +
                                                   result.alpha_final.size())},
           {"w_final", w}};
  if (!result.error.empty()) doc["error"] = result.error;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text,
                                       const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("dataset") == j.contains("synthetic")) {
      throw ConfigError("experiment config needs exactly one of 'dataset' or 'synthetic'");
    }
    if (j.contains("dataset")) {
      std::filesystem::path p = j.at("dataset").get<std::string>();
      cfg.source.dataset = LoadDatasetConfig(p.is_absolute() ? p : base_dir / p);
    } else {
      cfg.source.synthetic = SyntheticSpecFromJson(j.at("synthetic").dump());
    }
    if (j.contains("splits")) {
      for (const auto& s : j.at("splits")) {
        cfg.splits.push_back({s.at("name").get<std::string>(),
                              SplitSpecFromJson(s.at("split").dump())});
      }
    } else if (cfg.source.dataset && cfg.source.dataset->split) {
      cfg.splits.push_back({"default", *cfg.source.dataset->split});
    } else {
      throw ConfigError("experiment config has no split");
    }
    for (const auto& a : j.value("algorithms", json::array({"agnosticfair"}))) {
      cfg.algorithms.push_back(ParseAlgorithm(a.get<std::string>()));
    }
    if (j.contains("num_clients")) {
      cfg.num_clients = j.at("num_clients").get<std::vector<int>>();
      for (int c : cfg.num_clients) {
        if (c < 1) throw ConfigError("num_clients entries must be >= 1");
      }
    }
    if (j.contains("hyper")) cfg.hyper = HyperFromJson(j.at("hyper"), cfg.hyper);
    cfg.repetitions = j.value("repetitions", 1);
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("output")) {
      std::filesystem::path out = j.at("output").get<std::string>();
      cfg.output_dir = out.is_absolute() ? out : base_dir / out;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // A bare dataset config doubles as an experiment with default settings.
  try {
    json j = json::parse(text);
    if (j.is_object() && j.contains("columns")) {
      ExperimentConfig cfg;
      cfg.source.dataset = LoadDatasetConfig(path);
      if (!cfg.source.dataset->split) {
        throw ConfigError(path.string() + ": dataset config has no split");
      }
      cfg.splits.push_back({"default", *cfg.source.dataset->split});
      cfg.algorithms.push_back(AlgorithmKind::kAgnosticFair);
      return cfg;
    }
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ParseExperimentConfig(text, path.parent_path());
}

namespace {

PreparedData PrepareFrom(const DataSource& source, const RawTable* raw,
                         ShiftSplitSpec split, std::uint64_t seed) {
  split.seed = seed;
  if (source.synthetic) {
    SyntheticSpec s = *source.synthetic;
    s.seed = seed;
    return ShiftSplit(GenerateSynthetic(s), split);
  }
  if (!source.dataset) throw ConfigError("no data source");
  if (raw != nullptr) return PrepareShiftSplit(*raw, split);
  RawTable table = LoadCsv(source.dataset->csv_path, source.dataset->schema);
  return PrepareShiftSplit(table, split);
}

}  // namespace

PreparedData PrepareData(const DataSource& source, ShiftSplitSpec split,
                         std::uint64_t seed) {
  return PrepareFrom(source, nullptr, std::move(split), seed);
}

std::vector<SummaryRow> RunGrid(const ExperimentConfig& config,
                                const GridOptions& options) {
  std::optional<RawTable> raw;
  if (config.source.dataset) {
    raw = LoadCsv(config.source.dataset->csv_path, config.source.dataset->schema);
  }
  const bool write = options.write_runs && !config.output_dir.empty();
  if (write) std::filesystem::create_directories(config.output_dir / "runs");

  std::vector<SummaryRow> rows;
  for (const auto& variant : config.splits) {
    std::vector<int> client_counts = config.num_clients;
    if (client_counts.empty()) client_counts.push_back(variant.spec.num_clients);
    for (int clients : client_counts) {
      ShiftSplitSpec split = variant.spec;
      split.num_clients = clients;
      std::vector<SummaryRow> cell(config.algorithms.size());
      std::vector<std::vector<double>> train_acc(cell.size()), test_acc(cell.size()),
          train_rd(cell.size()), test_rd(cell.size());
      for (std::size_t a = 0; a < cell.size(); ++a) {
        cell[a].algorithm = AlgorithmName(config.algorithms[a]);
        cell[a].split = variant.name;
        cell[a].num_clients = clients;
      }
      for (int r = 0; r < config.repetitions; ++r) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
        std::optional<PreparedData> data;
        std::string prep_error;
        try {
          data = PrepareFrom(config.source, raw ? &*raw : nullptr, split, seed);
        } catch (const std::exception& e) {
          prep_error = e.what();
        }
        for (std::size_t a = 0; a < cell.size(); ++a) {
          if (!data) {
            cell[a].repetitions_failed++;
            cell[a].errors.push_back("seed " + std::to_string(seed) + ": " + prep_error);
            continue;
          }
          AlgorithmSpec spec{config.algorithms[a], config.hyper};
          spec.hyper.seed = seed;
          spdlog::info("{} / {} / {} clients / seed {}", cell[a].algorithm,
                       variant.name, clients, seed);
          RunResult res;
          try {
            res = Run(spec, *data);
          } catch (const std::exception& e) {
            res.error = e.what();
          }
          if (write) {
            std::string stem = cell[a].algorithm + "_" + variant.name + "_c" +
                               ClientsLabel(clients) + "_s" + std::to_string(seed);
            WriteRoundCsv(config.output_dir / "runs" / (stem + ".csv"), res);
          }
          if (!res.completed) {
            cell[a].repetitions_failed++;
            cell[a].errors.push_back("seed " + std::to_string(seed) + ": " + res.error);
            continue;
          }
          cell[a].repetitions_ok++;
          train_acc[a].push_back(res.final.train_acc);
          test_acc[a].push_back(res.final.test_acc);
          train_rd[a].push_back(res.final.train_rd);
          test_rd[a].push_back(res.final.test_rd);
        }
      }
      for (std::size_t a = 0; a < cell.size(); ++a) {
        cell[a].train_acc = Mean(train_acc[a]);
        cell[a].test_acc = Mean(test_acc[a]);
        cell[a].train_rd = Mean(train_rd[a]);
        cell[a].test_rd = Mean(test_rd[a]);
        cell[a].test_acc_std = StdDev(test_acc[a]);
        cell[a].test_rd_std = StdDev(test_rd[a]);
        rows.push_back(std::move(cell[a]));
      }
    }
  }
  return rows;
}

void WriteSummaryCsv(const std::filesystem::path& path,
                     const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "algorithm,split,num_clients,repetitions_ok,repetitions_failed,"
         "train_acc,test_acc,train_rd,test_rd,test_acc_std,test_rd_std\n";
  out.precision(10);
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.split << ',' << r.num_clients << ','
        << r.repetitions_ok << ',' << r.repetitions_failed << ',' << r.train_acc
        << ',' << r.test_acc << ',' << r.train_rd << ',' << r.test_rd << ','
        << r.test_acc_std << ',' << r.test_rd_std << '\n';
  }
}

void WriteSummaryJson(const std::filesystem::path& path,
                      const std::vector<SummaryRow>& rows) {
  json doc = json::array();
  for (const auto& r : rows) {
    doc.push_back({{"algorithm", r.algorithm},
                   {"split", r.split},
                   {"num_clients", r.num_clients},
                   {"repetitions_ok", r.repetitions_ok},
                   {"repetitions_failed", r.repetitions_failed},
                   {"train_acc", NumberOrNull(r.train_acc)},
                   {"test_acc", NumberOrNull(r.test_acc)},
                   {"train_rd", NumberOrNull(r.train_rd)},
                   {"test_rd", NumberOrNull(r.test_rd)},
                   {"test_acc_std", r.test_acc_std},
                   {"test_rd_std", r.test_rd_std},
                   {"errors", r.errors}});
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace agnostic_fair
