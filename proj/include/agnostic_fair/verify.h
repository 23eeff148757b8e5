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

#ifndef AGNOSTIC_FAIR_VERIFY_H_
#define AGNOSTIC_FAIR_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace agnostic_fair {

struct VerifyOptions {
  std::uint64_t seed = 0;
  // Debug hook: overrides the simplex pivot and feasibility tolerances.
  std::optional<double> corrupt_lp_tolerance;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Names accepted by RunChecks: "lp", "gradient", "aggregation".
const std::vector<std::string>& CheckNames();

// lp: 100 random instances with M <= 4 against vertex enumeration, plus
//     infeasible instances compared on the slack.
// gradient: analytic vs central differences, 50 instances per lambda.
// aggregation: summed client coefficients vs pooled-data formulas.
CheckResult CheckLp(const VerifyOptions& options);
CheckResult CheckGradient(const VerifyOptions& options);
CheckResult CheckAggregation(const VerifyOptions& options);

// Empty `only` runs every check. Throws ConfigError on an unknown name.
std::vector<CheckResult> RunChecks(const std::vector<std::string>& only,
                                   const VerifyOptions& options);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_VERIFY_H_
