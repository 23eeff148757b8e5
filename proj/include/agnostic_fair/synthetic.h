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

#ifndef AGNOSTIC_FAIR_SYNTHETIC_H_
#define AGNOSTIC_FAIR_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "agnostic_fair/dataset.h"

namespace agnostic_fair {

enum class LabelRule {
  // Features drawn around a class mean: +separation/2 or -separation/2.
  kBlobs,
  // Features drawn around the origin, label from a fixed hyperplane.
  kLinear,
};

struct SyntheticSpec {
  std::size_t n = 1000;
  std::size_t d = 4;
  double separation = 2.0;
  LabelRule label_rule = LabelRule::kBlobs;
  // P(s = y) = (1 + sensitive_correlation) / 2.
  double sensitive_correlation = 0.0;
  // Group B features are offset by this amount in every coordinate.
  double domain_shift = 0.0;
  // Probability that a row belongs to group A.
  double group_a_share = 0.5;
  std::uint64_t seed = 0;
  void Validate() const;
};

// Rows 0..3 cover every (s, y) pair. Continuous features are min-max scaled
// to [0,1]; the sensitive column follows them, then the bias. split_values
// holds "A" or "B".
EncodedDataset GenerateSynthetic(const SyntheticSpec& spec);

SyntheticSpec SyntheticSpecFromJson(const std::string& json_text);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_SYNTHETIC_H_
