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

#include "agnostic_fair/synthetic.h"

#include <cmath>
#include <random>

#include "agnostic_fair/errors.h"
#include "json.hpp"

namespace agnostic_fair {

void SyntheticSpec::Validate() const {
  if (n < 4) throw ConfigError("synthetic data needs n >= 4");
  if (d < 1) throw ConfigError("synthetic data needs d >= 1");
  if (!(sensitive_correlation > -1.0 && sensitive_correlation < 1.0)) {
    throw ConfigError("sensitive_correlation must lie in (-1, 1)");
  }
  if (!(group_a_share >= 0.0 && group_a_share <= 1.0)) {
    throw ConfigError("group_a_share must lie in [0, 1]");
  }
  if (!std::isfinite(separation) || !std::isfinite(domain_shift)) {
    throw ConfigError("synthetic parameters must be finite");
  }
}

EncodedDataset GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto d = static_cast<Eigen::Index>(spec.d);
  Eigen::MatrixXd raw(n, d);
  Eigen::VectorXd labels(n);
  Eigen::VectorXd sensitive(n);
  std::vector<std::string> groups(spec.n);

  Eigen::VectorXd hyperplane(d);
  for (Eigen::Index j = 0; j < d; ++j) hyperplane(j) = (j % 2 == 0) ? 1.0 : -0.5;

  const double p_match = 0.5 * (1.0 + spec.sensitive_correlation);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool group_a = unit(rng) < spec.group_a_share;
    groups[static_cast<std::size_t>(i)] = group_a ? "A" : "B";
    const double offset = group_a ? 0.0 : spec.domain_shift;
    double y = unit(rng) < 0.5 ? 1.0 : 0.0;
    if (i < 4) y = static_cast<double>(i % 2);
    if (spec.label_rule == LabelRule::kBlobs) {
      const double mean = (y > 0.5 ? 0.5 : -0.5) * spec.separation;
      for (Eigen::Index j = 0; j < d; ++j) raw(i, j) = mean + offset + normal(rng);
    } else {
      for (Eigen::Index j = 0; j < d; ++j) raw(i, j) = offset + normal(rng);
      if (i >= 4) y = raw.row(i).dot(hyperplane) > offset * hyperplane.sum() ? 1.0 : 0.0;
    }
    double s = unit(rng) < p_match ? y : 1.0 - y;
    if (i < 4) s = static_cast<double>(i / 2);
    labels(i) = y;
    sensitive(i) = s;
  }

  EncodedDataset out;
  out.features.resize(n, d + 2);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lo = raw.col(j).minCoeff();
    const double hi = raw.col(j).maxCoeff();
    if (hi > lo) {
      out.features.col(j) = (raw.col(j).array() - lo) / (hi - lo);
    } else {
      out.features.col(j).setZero();
    }
    out.feature_names.push_back("x" + std::to_string(j));
  }
  out.features.col(d) = sensitive;
  out.features.col(d + 1).setOnes();
  out.feature_names.push_back("s");
  out.feature_names.push_back("bias");
  out.labels = std::move(labels);
  out.sensitive = std::move(sensitive);
  out.split_values = std::move(groups);
  return out;
}

SyntheticSpec SyntheticSpecFromJson(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic spec: ") + e.what());
  }
  SyntheticSpec spec;
  try {
    spec.n = j.value("n", spec.n);
    spec.d = j.value("d", spec.d);
    spec.separation = j.value("separation", spec.separation);
    spec.sensitive_correlation =
        j.value("sensitive_correlation", spec.sensitive_correlation);
    spec.domain_shift = j.value("domain_shift", spec.domain_shift);
    spec.group_a_share = j.value("group_a_share", spec.group_a_share);
    spec.seed = j.value("seed", spec.seed);
    const std::string rule = j.value("label_rule", std::string("blobs"));
    if (rule == "blobs") {
      spec.label_rule = LabelRule::kBlobs;
    } else if (rule == "linear") {
      spec.label_rule = LabelRule::kLinear;
    } else {
      throw ConfigError("unknown label_rule '" + rule + "' (blobs, linear)");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

}  // namespace agnostic_fair
