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

#include "test_support.h"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace agnostic_fair::testing {

std::filesystem::path SourceDir() { return AF_SOURCE_DIR; }

std::filesystem::path AdultConfigPath() { return SourceDir() / "configs" / "adult.json"; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("agnostic_fair_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path TempDir::Write(const std::string& name,
                                     const std::string& text) const {
  std::filesystem::path p = path_ / name;
  std::ofstream out(p);
  out << text;
  return p;
}

Eigen::VectorXd RandomVector(std::mt19937_64& rng, Eigen::Index n, double lo,
                             double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

ClientShard RandomShard(std::mt19937_64& rng, int client_id, Eigen::Index n,
                        Eigen::Index dim) {
  std::bernoulli_distribution coin(0.5);
  ClientShard s;
  s.client_id = client_id;
  s.features.resize(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.features.row(i).head(dim - 1) = RandomVector(rng, dim - 1, 0.0, 1.0).transpose();
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

ClientShard Pool(const std::vector<ClientShard>& shards) {
  Eigen::Index n = 0;
  for (const auto& s : shards) n += static_cast<Eigen::Index>(s.size());
  ClientShard out;
  out.features.resize(n, shards.front().features.cols());
  out.labels.resize(n);
  out.sensitive.resize(n);
  Eigen::Index row = 0;
  for (const auto& s : shards) {
    auto k = static_cast<Eigen::Index>(s.size());
    out.features.middleRows(row, k) = s.features;
    out.labels.segment(row, k) = s.labels;
    out.sensitive.segment(row, k) = s.sensitive;
    row += k;
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace agnostic_fair::testing
