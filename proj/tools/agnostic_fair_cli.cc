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

// Command-line entry point: prepare, run, grid, verify.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agnostic_fair/engine.h"
#include "agnostic_fair/errors.h"
#include "agnostic_fair/verify.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace fs = std::filesystem;
namespace af = agnostic_fair;

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string config;
  std::string algorithm = "agnosticfair";
  std::optional<int> rounds;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string log_level = "info";
  bool debug_lp_dump = false;
  bool message_log = false;
  std::vector<std::string> only;
  std::optional<double> corrupt_lp_tolerance;
};

fs::path OutputDir(const Options& opt) {
  if (!opt.output.empty()) return opt.output;
  if (const char* env = std::getenv("AGNOSTIC_FAIR_OUTPUT"); env && *env) return env;
  return "out";
}

af::ExperimentConfig LoadConfig(const Options& opt) {
  if (opt.config.empty()) throw af::ConfigError("--config is required");
  if (!fs::exists(opt.config)) throw af::ConfigError("config file not found: " + opt.config);
  return af::LoadExperimentConfig(opt.config);
}

std::uint64_t SeedFor(const Options& opt, const af::ExperimentConfig& cfg) {
  return opt.seed ? *opt.seed : cfg.base_seed;
}

int CmdPrepare(const Options& opt) {
  af::ExperimentConfig cfg = LoadConfig(opt);
  const fs::path out = OutputDir(opt);
  const std::uint64_t seed = SeedFor(opt, cfg);
  af::ShiftSplitSpec split = cfg.splits.front().spec;
  af::PreparedData data = af::PrepareData(cfg.source, split, seed);
  split.seed = seed;
  af::WritePrepared(out, data, split);
  spdlog::info("wrote {} train rows, {} test rows, {} shards to {}", data.train.size(),
               data.test.size(), data.shards.size(), out.string());
  std::cout << "prepared " << out.string() << " shards=" << data.shards.size() << '\n';
  return kOk;
}

int CmdRun(const Options& opt) {
  af::AlgorithmKind kind = af::ParseAlgorithm(opt.algorithm);
  af::ExperimentConfig cfg = LoadConfig(opt);
  af::AlgorithmSpec spec{kind, cfg.hyper};
  if (opt.rounds) spec.hyper.rounds = *opt.rounds;
  spec.hyper.seed = SeedFor(opt, cfg);
  spec.Validate();

  const fs::path out = OutputDir(opt);
  fs::create_directories(out);
  af::PreparedData data = af::PrepareData(cfg.source, cfg.splits.front().spec, spec.hyper.seed);

  std::ofstream lp_dump;
  std::ofstream messages;
  std::optional<af::MessageLog> log;
  af::RunOptions run_opts;
  if (opt.debug_lp_dump) {
    lp_dump.open(out / "lp_dump.txt");
    run_opts.lp_dump = &lp_dump;
  }
  if (opt.message_log) {
    messages.open(out / "messages.jsonl");
    log.emplace(messages);
    run_opts.log = &*log;
  }
  af::RunResult result = af::Run(spec, data, run_opts);
  af::WriteRoundCsv(out / "rounds.csv", result);
  af::WriteRunJson(out / "run.json", result, data.train.feature_names);
  std::cout << "algorithm=" << af::AlgorithmName(kind)
            << " rounds=" << result.per_round.size()
            << " train_acc=" << result.final.train_acc
            << " test_acc=" << result.final.test_acc
            << " test_rd=" << result.final.test_rd
            << " completed=" << (result.completed ? "true" : "false") << '\n';
  if (!result.completed) {
    std::cerr << "run failed: " << result.error << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}

int CmdGrid(const Options& opt) {
  af::ExperimentConfig cfg = LoadConfig(opt);
  if (opt.seed) cfg.base_seed = *opt.seed;
  if (opt.rounds) cfg.hyper.rounds = *opt.rounds;
  if (!opt.output.empty() || cfg.output_dir.empty()) cfg.output_dir = OutputDir(opt);
  fs::create_directories(cfg.output_dir);
  std::vector<af::SummaryRow> rows = af::RunGrid(cfg);
  af::WriteSummaryCsv(cfg.output_dir / "summary.csv", rows);
  af::WriteSummaryJson(cfg.output_dir / "summary.json", rows);
  bool any_failed = false;
  std::cout << "algorithm,split,num_clients,ok,failed,test_acc,test_rd\n";
  for (const auto& r : rows) {
    std::cout << r.algorithm << ',' << r.split << ',' << r.num_clients << ','
              << r.repetitions_ok << ',' << r.repetitions_failed << ',' << r.test_acc
              << ',' << r.test_rd << '\n';
    if (r.repetitions_failed > 0) any_failed = true;
  }
  return any_failed ? kRuntimeFailure : kOk;
}

int CmdVerify(const Options& opt) {
  af::VerifyOptions vopt;
  vopt.seed = opt.seed.value_or(0);
  vopt.corrupt_lp_tolerance = opt.corrupt_lp_tolerance;
  std::vector<af::CheckResult> results = af::RunChecks(opt.only, vopt);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? kOk : kRuntimeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("agnostic_fair"));

  CLI::App app{"Fairness-aware agnostic federated learning simulator"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--log-level", opt.log_level, "trace, debug, info, warn, error, off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "experiment or dataset config (JSON)");
    sub->add_option("--output", opt.output, "output directory");
    sub->add_option("--seed", opt.seed, "seed override");
    sub->add_option("--log-level", opt.log_level)
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
  };
  CLI::App* prepare = app.add_subcommand("prepare", "encode, split and write shards");
  add_common(prepare);
  CLI::App* run = app.add_subcommand("run", "run one algorithm");
  add_common(run);
  run->add_option("--algorithm", opt.algorithm, "algorithm name");
  run->add_option("--rounds", opt.rounds, "number of rounds T")->check(CLI::NonNegativeNumber);
  run->add_flag("--debug-lp-dump", opt.debug_lp_dump, "write every round's LP");
  run->add_flag("--message-log", opt.message_log, "write every protocol message");
  CLI::App* grid = app.add_subcommand("grid", "run an experiment grid");
  add_common(grid);
  grid->add_option("--rounds", opt.rounds, "number of rounds T")->check(CLI::NonNegativeNumber);
  CLI::App* verify = app.add_subcommand("verify", "run the oracle checks");
  verify->add_option("--only", opt.only, "check name (lp, gradient, aggregation)");
  verify->add_option("--seed", opt.seed, "seed");
  verify->add_option("--debug-corrupt-lp-tolerance", opt.corrupt_lp_tolerance,
                     "override simplex tolerances");
  verify->add_option("--log-level", opt.log_level)
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }
  spdlog::set_level(spdlog::level::from_str(opt.log_level));

  try {
    if (*prepare) return CmdPrepare(opt);
    if (*run) return CmdRun(opt);
    if (*grid) return CmdGrid(opt);
    if (*verify) return CmdVerify(opt);
  } catch (const af::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const af::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}
