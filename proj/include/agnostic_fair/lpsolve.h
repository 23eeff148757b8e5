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

#ifndef AGNOSTIC_FAIR_LPSOLVE_H_
#define AGNOSTIC_FAIR_LPSOLVE_H_

#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "agnostic_fair/kernel.h"

namespace agnostic_fair {

// The server's mixture-coefficient problem:
//
//   maximize    objective . alpha
//   subject to  equality . alpha = 1
//               |fairness_row . alpha| <= tau      (when fairness_row is set)
//               0 <= alpha_m <= box_upper
struct AlphaLp {
  Eigen::VectorXd objective;
  Eigen::VectorXd equality;
  std::optional<Eigen::VectorXd> fairness_row;
  double tau = 0.05;
  double box_upper = 5.0;

  int size() const { return static_cast<int>(objective.size()); }
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasibleRelaxed, kError };

const char* LpStatusName(LpStatus status);

struct LpSolution {
  MixtureCoefficients alpha;
  double objective_value = 0.0;
  LpStatus status = LpStatus::kError;
  // Extra allowance s added to tau when the fairness row cannot be met.
  double slack_used = 0.0;
  std::string message;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  int max_iterations = 100000;
};

// Bounded-variable primal simplex, Bland's rule. When the fairness rows
// cannot be met, first minimizes a slack s on both rows (|row . alpha| <=
// tau + s), then maximizes the objective with s held at its minimum.
LpSolution Solve(const AlphaLp& lp, const SimplexOptions& options = {});

// Reference solution by enumerating every vertex of the (alpha, s)
// polytope; refuses problems with more than six coefficients. Picks the
// smallest slack, then the largest objective.
LpSolution BruteForceOracle(const AlphaLp& lp, double tolerance = 1e-9);

// Largest violation of the equality, fairness (with slack) and box rows.
double MaxViolation(const AlphaLp& lp, const Eigen::VectorXd& alpha,
                    double slack = 0.0);

// Plain-text dump: one labelled row per line.
void WriteLpDump(std::ostream& out, const AlphaLp& lp);

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_LPSOLVE_H_
