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

#include "agnostic_fair/lpsolve.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "agnostic_fair/errors.h"

namespace agnostic_fair {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Reduced costs smaller than this are treated as zero.
constexpr double kOptimalityTolerance = 1e-11;

// minimize cost . x  subject to  a x = b,  0 <= x <= upper.
struct StandardLp {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd cost;
  Eigen::VectorXd upper;
};

enum class SimplexOutcome { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

// Dense tableau simplex for a handful of rows. Nonbasic variables sit at
// their lower (0) or upper bound; artificials seed the phase-one basis.
class BoundedSimplex {
 public:
  BoundedSimplex(const StandardLp& lp, const SimplexOptions& options)
      : options_(options),
        rows_(lp.a.rows()),
        structural_(lp.a.cols()),
        columns_(lp.a.cols() + lp.a.rows()) {
    a_.resize(rows_, columns_);
    b_ = lp.b;
    a_.leftCols(structural_) = lp.a;
    a_.rightCols(rows_).setIdentity();
    // Non-negative right-hand side so the artificial basis is feasible.
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (b_(i) < 0.0) {
        a_.row(i) *= -1.0;
        a_(i, structural_ + i) = 1.0;
        b_(i) = -b_(i);
      }
    }
    upper_.resize(columns_);
    upper_.head(structural_) = lp.upper;
    upper_.tail(rows_).setConstant(kInf);
    cost_ = Eigen::VectorXd::Zero(columns_);
    cost_.head(structural_) = lp.cost;

    tableau_ = a_;
    basis_.resize(static_cast<std::size_t>(rows_));
    at_upper_.assign(static_cast<std::size_t>(columns_), false);
    is_basic_.assign(static_cast<std::size_t>(columns_), false);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      basis_[static_cast<std::size_t>(i)] = structural_ + i;
      is_basic_[static_cast<std::size_t>(structural_ + i)] = true;
    }
    values_ = b_;
  }

  SimplexOutcome Run() {
    Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(columns_);
    phase_one.tail(rows_).setOnes();
    SimplexOutcome outcome = Iterate(phase_one, columns_);
    if (outcome != SimplexOutcome::kOptimal) return outcome;
    Refactor();
    if (values_.size() > 0) {
      double infeasibility = 0.0;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] >= structural_) infeasibility += values_(i);
      }
      if (infeasibility > options_.feasibility_tolerance) {
        return SimplexOutcome::kInfeasible;
      }
    }
    DriveOutArtificials();
    upper_.tail(rows_).setZero();
    outcome = Iterate(cost_, structural_);
    Refactor();
    return outcome;
  }

  Eigen::VectorXd Solution() const {
    Eigen::VectorXd x(structural_);
    for (Eigen::Index j = 0; j < structural_; ++j) {
      x(j) = at_upper_[static_cast<std::size_t>(j)] ? upper_(j) : 0.0;
    }
    for (Eigen::Index i = 0; i < rows_; ++i) {
      Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < structural_) x(j) = values_(i);
    }
    return x;
  }

 private:
  // Primal simplex on `cost`; only columns below `allowed` may enter.
  SimplexOutcome Iterate(const Eigen::VectorXd& cost, Eigen::Index allowed) {
    for (int iter = 0; iter < options_.max_iterations; ++iter) {
      Eigen::RowVectorXd basic_cost(rows_);
      for (Eigen::Index i = 0; i < rows_; ++i) {
        basic_cost(i) = cost(basis_[static_cast<std::size_t>(i)]);
      }
      // Bland: lowest-index improving column.
      Eigen::Index entering = -1;
      double direction = 0.0;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        auto ju = static_cast<std::size_t>(j);
        if (is_basic_[ju] || upper_(j) == 0.0) continue;
        double reduced = cost(j) - basic_cost.dot(tableau_.col(j));
        if (!at_upper_[ju] && reduced < -kOptimalityTolerance) {
          entering = j;
          direction = 1.0;
          break;
        }
        if (at_upper_[ju] && reduced > kOptimalityTolerance) {
          entering = j;
          direction = -1.0;
          break;
        }
      }
      if (entering < 0) return SimplexOutcome::kOptimal;

      // Ratio test. The entering variable's own bound counts as a candidate.
      double step = upper_(entering);
      Eigen::Index leaving_row = -1;
      Eigen::Index leaving_var = entering;
      bool leaving_to_upper = false;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        double coeff = direction * tableau_(i, entering);
        Eigen::Index var = basis_[static_cast<std::size_t>(i)];
        double limit;
        bool to_upper;
        if (coeff > options_.pivot_tolerance) {
          limit = std::max(values_(i), 0.0) / coeff;
          to_upper = false;
        } else if (coeff < -options_.pivot_tolerance && std::isfinite(upper_(var))) {
          limit = std::max(upper_(var) - values_(i), 0.0) / -coeff;
          to_upper = true;
        } else {
          continue;
        }
        const double margin = std::isfinite(step) ? 1e-12 * (1.0 + std::abs(step)) : 0.0;
        bool better = limit < step - margin;
        bool tie = !better && limit <= step + margin;
        if (better || (tie && var < leaving_var)) {
          step = limit;
          leaving_row = i;
          leaving_var = var;
          leaving_to_upper = to_upper;
        }
      }
      if (!std::isfinite(step)) return SimplexOutcome::kUnbounded;

      values_ -= direction * step * tableau_.col(entering);
      auto eu = static_cast<std::size_t>(entering);
      if (leaving_row < 0) {
        // Bound flip, basis unchanged.
        at_upper_[eu] = !at_upper_[eu];
        continue;
      }
      double entering_value = (at_upper_[eu] ? upper_(entering) : 0.0) + direction * step;
      Pivot(leaving_row, entering);
      auto lu = static_cast<std::size_t>(leaving_var);
      at_upper_[lu] = leaving_to_upper;
      at_upper_[eu] = false;
      values_(leaving_row) = entering_value;
    }
    return SimplexOutcome::kIterationLimit;
  }

  void Pivot(Eigen::Index row, Eigen::Index col) {
    tableau_.row(row) /= tableau_(row, col);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i == row) continue;
      double factor = tableau_(i, col);
      if (factor != 0.0) tableau_.row(i) -= factor * tableau_.row(row);
    }
    auto ru = static_cast<std::size_t>(row);
    is_basic_[static_cast<std::size_t>(basis_[ru])] = false;
    basis_[ru] = col;
    is_basic_[static_cast<std::size_t>(col)] = true;
  }

  void DriveOutArtificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < structural_) continue;
      Eigen::Index best = -1;
      for (Eigen::Index j = 0; j < structural_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        if (std::abs(tableau_(i, j)) > 1e-9 &&
            (best < 0 || std::abs(tableau_(i, j)) > std::abs(tableau_(i, best)))) {
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; artificial stays at zero
      double value = at_upper_[static_cast<std::size_t>(best)] ? upper_(best) : 0.0;
      Eigen::Index artificial = basis_[static_cast<std::size_t>(i)];
      Pivot(i, best);
      at_upper_[static_cast<std::size_t>(artificial)] = false;
      at_upper_[static_cast<std::size_t>(best)] = false;
      values_(i) = value;
    }
  }

  // Recomputes the basic values and the tableau from the original rows.
  void Refactor() {
    Eigen::MatrixXd basis_matrix(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      basis_matrix.col(i) = a_.col(basis_[static_cast<std::size_t>(i)]);
    }
    Eigen::VectorXd rhs = b_;
    for (Eigen::Index j = 0; j < columns_; ++j) {
      auto ju = static_cast<std::size_t>(j);
      if (!is_basic_[ju] && at_upper_[ju]) rhs -= upper_(j) * a_.col(j);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!lu.isInvertible()) return;
    values_ = lu.solve(rhs);
    tableau_ = lu.solve(a_);
  }

  SimplexOptions options_;
  Eigen::Index rows_;
  Eigen::Index structural_;
  Eigen::Index columns_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd upper_;
  Eigen::VectorXd cost_;
  Eigen::MatrixXd tableau_;
  Eigen::VectorXd values_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
};

// Column layout: alpha (M), then s_plus, s_minus, slack when fairness rows
// are present.
StandardLp BuildStandard(const AlphaLp& lp, double slack_upper,
                         bool minimize_slack) {
  const Eigen::Index m = lp.size();
  const bool fair = lp.fairness_row.has_value();
  const Eigen::Index n = fair ? m + 3 : m;
  StandardLp s;
  s.a = Eigen::MatrixXd::Zero(fair ? 3 : 1, n);
  s.b = Eigen::VectorXd::Zero(s.a.rows());
  s.cost = Eigen::VectorXd::Zero(n);
  s.upper = Eigen::VectorXd::Constant(n, lp.box_upper);
  s.a.row(0).head(m) = lp.equality.transpose();
  s.b(0) = 1.0;
  if (fair) {
    const Eigen::VectorXd& row = *lp.fairness_row;
    s.a.row(1).head(m) = row.transpose();
    s.a(1, m) = 1.0;
    s.a(1, m + 2) = -1.0;
    s.b(1) = lp.tau;
    s.a.row(2).head(m) = -row.transpose();
    s.a(2, m + 1) = 1.0;
    s.a(2, m + 2) = -1.0;
    s.b(2) = lp.tau;
    s.upper(m) = kInf;
    s.upper(m + 1) = kInf;
    s.upper(m + 2) = slack_upper;
  }
  if (minimize_slack) {
    s.cost(m + 2) = 1.0;
  } else {
    s.cost.head(m) = -lp.objective;
  }
  return s;
}

LpSolution ErrorSolution(const AlphaLp& lp, std::string message) {
  LpSolution sol;
  sol.alpha.alpha = Eigen::VectorXd::Zero(lp.size());
  sol.status = LpStatus::kError;
  sol.message = std::move(message);
  return sol;
}

LpSolution Finish(const AlphaLp& lp, const Eigen::VectorXd& x, LpStatus status) {
  LpSolution sol;
  const Eigen::Index m = lp.size();
  sol.alpha.alpha = x.head(m).cwiseMax(0.0).cwiseMin(lp.box_upper);
  sol.objective_value = lp.objective.dot(sol.alpha.alpha);
  sol.slack_used = lp.fairness_row ? std::max(x(m + 2), 0.0) : 0.0;
  sol.status = status;
  return sol;
}

}  // namespace

void AlphaLp::Validate() const {
  if (objective.size() < 1) throw ConfigError("LP needs at least one coefficient");
  if (equality.size() != objective.size()) {
    throw DimensionError("LP equality row has the wrong length");
  }
  if (fairness_row && fairness_row->size() != objective.size()) {
    throw DimensionError("LP fairness row has the wrong length");
  }
  if (!(tau >= 0.0)) throw ConfigError("tau must be non-negative");
  if (!(box_upper > 0.0)) throw ConfigError("box upper bound must be positive");
  if (!objective.allFinite() || !equality.allFinite() ||
      (fairness_row && !fairness_row->allFinite())) {
    throw NumericalError("LP data contains non-finite entries");
  }
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasibleRelaxed:
      return "infeasible_relaxed";
    case LpStatus::kError:
      return "error";
  }
  return "";
}

LpSolution Solve(const AlphaLp& lp, const SimplexOptions& options) {
  lp.Validate();
  if (lp.equality.isZero(0.0)) {
    return ErrorSolution(lp, "sum-to-one row is all zeros");
  }
  {
    BoundedSimplex simplex(BuildStandard(lp, 0.0, false), options);
    SimplexOutcome outcome = simplex.Run();
    if (outcome == SimplexOutcome::kOptimal) {
      return Finish(lp, simplex.Solution(), LpStatus::kOptimal);
    }
    if (outcome != SimplexOutcome::kInfeasible) {
      return ErrorSolution(lp, "simplex did not terminate cleanly");
    }
  }
  if (!lp.fairness_row) {
    return ErrorSolution(lp, "sum-to-one row cannot be met inside the box");
  }
  BoundedSimplex min_slack(BuildStandard(lp, kInf, true), options);
  if (min_slack.Run() != SimplexOutcome::kOptimal) {
    return ErrorSolution(lp, "sum-to-one row cannot be met inside the box");
  }
  const double slack = min_slack.Solution()(lp.size() + 2);
  const double allowance = slack + 1e-12 * std::max(1.0, slack);
  BoundedSimplex relaxed(BuildStandard(lp, allowance, false), options);
  if (relaxed.Run() != SimplexOutcome::kOptimal) {
    return ErrorSolution(lp, "relaxed problem failed");
  }
  LpSolution sol = Finish(lp, relaxed.Solution(), LpStatus::kInfeasibleRelaxed);
  sol.message = "fairness row relaxed by " + std::to_string(sol.slack_used);
  return sol;
}

LpSolution BruteForceOracle(const AlphaLp& lp, double tolerance) {
  lp.Validate();
  const int m = lp.size();
  if (m > 6) throw ConfigError("vertex enumeration is limited to M <= 6");
  const bool fair = lp.fairness_row.has_value();
  const int dim = fair ? m + 1 : m;  // last coordinate is the slack

  // Inequalities g . x <= h.
  std::vector<Eigen::VectorXd> g;
  std::vector<double> h;
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd lower = Eigen::VectorXd::Zero(dim);
    lower(k) = -1.0;
    g.push_back(lower);
    h.push_back(0.0);
    Eigen::VectorXd upper = Eigen::VectorXd::Zero(dim);
    upper(k) = 1.0;
    g.push_back(upper);
    h.push_back(lp.box_upper);
  }
  if (fair) {
    Eigen::VectorXd plus = Eigen::VectorXd::Zero(dim);
    plus.head(m) = *lp.fairness_row;
    plus(m) = -1.0;
    g.push_back(plus);
    h.push_back(lp.tau);
    Eigen::VectorXd minus = Eigen::VectorXd::Zero(dim);
    minus.head(m) = -*lp.fairness_row;
    minus(m) = -1.0;
    g.push_back(minus);
    h.push_back(lp.tau);
    Eigen::VectorXd slack_floor = Eigen::VectorXd::Zero(dim);
    slack_floor(m) = -1.0;
    g.push_back(slack_floor);
    h.push_back(0.0);
  }
  Eigen::VectorXd eq = Eigen::VectorXd::Zero(dim);
  eq.head(m) = lp.equality;

  const int total = static_cast<int>(g.size());
  const int choose = dim - 1;
  std::vector<int> pick(static_cast<std::size_t>(choose));
  for (int i = 0; i < choose; ++i) pick[static_cast<std::size_t>(i)] = i;

  bool found = false;
  Eigen::VectorXd best;
  double best_slack = kInf, best_value = -kInf;
  auto consider = [&]() {
    Eigen::MatrixXd system(dim, dim);
    Eigen::VectorXd rhs(dim);
    system.row(0) = eq.transpose();
    rhs(0) = 1.0;
    for (int i = 0; i < choose; ++i) {
      system.row(i + 1) = g[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].transpose();
      rhs(i + 1) = h[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (lu.rank() < dim) return;
    Eigen::VectorXd x = lu.solve(rhs);
    if (std::abs(eq.dot(x) - 1.0) > tolerance) return;
    for (int k = 0; k < total; ++k) {
      if (g[static_cast<std::size_t>(k)].dot(x) > h[static_cast<std::size_t>(k)] + tolerance) return;
    }
    double slack = fair ? x(m) : 0.0;
    double value = lp.objective.dot(x.head(m));
    bool less_slack = slack < best_slack - tolerance;
    bool same_slack = !less_slack && slack <= best_slack + tolerance;
    if (!found || less_slack || (same_slack && value > best_value)) {
      found = true;
      best = x;
      best_slack = slack;
      best_value = value;
    }
  };

  if (choose == 0) {
    consider();
  } else {
    while (true) {
      consider();
      int i = choose - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - choose + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < choose; ++j) {
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  if (!found) return ErrorSolution(lp, "no feasible vertex");
  LpSolution sol;
  sol.alpha.alpha = best.head(m).cwiseMax(0.0).cwiseMin(lp.box_upper);
  sol.objective_value = lp.objective.dot(sol.alpha.alpha);
  sol.slack_used = std::max(best_slack, 0.0);
  sol.status = sol.slack_used > tolerance ? LpStatus::kInfeasibleRelaxed
                                          : LpStatus::kOptimal;
  return sol;
}

double MaxViolation(const AlphaLp& lp, const Eigen::VectorXd& alpha,
                    double slack) {
  double worst = std::abs(lp.equality.dot(alpha) - 1.0);
  if (lp.fairness_row) {
    worst = std::max(worst, std::abs(lp.fairness_row->dot(alpha)) - lp.tau - slack);
  }
  worst = std::max(worst, -alpha.minCoeff());
  worst = std::max(worst, alpha.maxCoeff() - lp.box_upper);
  return std::max(worst, 0.0);
}

void WriteLpDump(std::ostream& out, const AlphaLp& lp) {
  auto row = [&](const char* label, const Eigen::VectorXd& v) {
    out << label;
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << v(i);
    out << '\n';
  };
  const auto old_precision = out.precision(17);
  row("objective", lp.objective);
  row("equality", lp.equality);
  out << "equality_rhs 1\n";
  if (lp.fairness_row) {
    row("fairness", *lp.fairness_row);
    out << "fairness_bound " << lp.tau << '\n';
  }
  out << "bounds 0 " << lp.box_upper << '\n';
  out.precision(old_precision);
}

}  // namespace agnostic_fair
