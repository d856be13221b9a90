// SPDX-License-Identifier: Apache-2.0

#include "efp/simplex.h"

#include <algorithm>
#include <cmath>

namespace efp {
namespace {

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper };

// Tableau over columns [structural | slack | artificial] in the shifted space
// y = x - lower, 0 <= y <= upper - lower. Rows are scaled so that the initial
// right-hand side is non-negative.
class DenseSimplex {
 public:
  DenseSimplex(const MipModel& model, std::span<const double> lower,
               std::span<const double> upper, const LpOptions& options);

  LpSolution Solve();

 private:
  enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit, kTimeLimit };

  double& At(std::size_t r, std::size_t j) { return tableau_[r * cols_ + j]; }
  double At(std::size_t r, std::size_t j) const { return tableau_[r * cols_ + j]; }

  void ComputeReducedCosts();
  PhaseResult RunPhase();
  // Returns -1 if no column prices out.
  long ChooseEntering(bool bland) const;
  void Pivot(std::size_t row, std::size_t col);
  void DriveOutArtificials();
  std::vector<double> ExtractValues() const;

  const MipModel& model_;
  std::span<const double> lower_;
  LpOptions options_;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t num_structural_ = 0;
  std::size_t first_artificial_ = 0;

  std::vector<double> tableau_;
  std::vector<double> beta_;   // value of the basic variable of each row
  std::vector<double> upper_;  // per column, in shifted space
  std::vector<double> cost_;   // per column, maximization
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
  std::vector<VarState> state_;

  double feas_tol_ = 1e-9;
  double opt_tol_ = 1e-9;
  long iterations_ = 0;
  long bland_pivots_ = 0;
  std::vector<std::size_t> pivot_row_nz_;
};

DenseSimplex::DenseSimplex(const MipModel& model, std::span<const double> lower,
                           std::span<const double> upper,
                           const LpOptions& options)
    : model_(model), lower_(lower), options_(options) {
  const auto constraints = model.constraints();
  rows_ = constraints.size();
  num_structural_ = static_cast<std::size_t>(model.num_variables());

  std::size_t num_slack = 0;
  for (const Constraint& c : constraints) {
    if (c.relation != Relation::kEqual) ++num_slack;
  }

  // Shifted right-hand sides decide the row sign and whether an artificial is
  // needed.
  std::vector<double> rhs(rows_);
  std::vector<double> sign(rows_, 1.0);
  std::vector<bool> needs_artificial(rows_, false);
  double rhs_scale = 1.0;
  std::size_t num_artificial = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Constraint& c = constraints[r];
    double b = c.rhs;
    for (const Term& t : c.terms) b -= t.coef * lower[static_cast<std::size_t>(t.var)];
    double slack_coef = c.relation == Relation::kLessEqual    ? 1.0
                        : c.relation == Relation::kGreaterEqual ? -1.0
                                                                : 0.0;
    if (b < 0.0) {
      sign[r] = -1.0;
      b = -b;
      slack_coef = -slack_coef;
    }
    rhs[r] = b;
    rhs_scale = std::max(rhs_scale, b);
    if (slack_coef != 1.0) {
      needs_artificial[r] = true;
      ++num_artificial;
    }
  }

  first_artificial_ = num_structural_ + num_slack;
  cols_ = first_artificial_ + num_artificial;
  tableau_.assign(rows_ * cols_, 0.0);
  beta_ = rhs;
  upper_.assign(cols_, kInfinity);
  cost_.assign(cols_, 0.0);
  state_.assign(cols_, VarState::kAtLower);
  basis_.assign(rows_, 0);

  double bound_scale = 1.0;
  for (std::size_t j = 0; j < num_structural_; ++j) {
    upper_[j] = upper[j] - lower[j];
    if (std::isfinite(upper_[j])) bound_scale = std::max(bound_scale, upper_[j]);
  }

  std::size_t slack = num_structural_;
  std::size_t artificial = first_artificial_;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Constraint& c = constraints[r];
    for (const Term& t : c.terms) {
      At(r, static_cast<std::size_t>(t.var)) = sign[r] * t.coef;
    }
    if (c.relation != Relation::kEqual) {
      const double coef =
          sign[r] * (c.relation == Relation::kLessEqual ? 1.0 : -1.0);
      At(r, slack) = coef;
      if (!needs_artificial[r]) {
        basis_[r] = slack;
        state_[slack] = VarState::kBasic;
      }
      ++slack;
    }
    if (needs_artificial[r]) {
      At(r, artificial) = 1.0;
      basis_[r] = artificial;
      state_[artificial] = VarState::kBasic;
      ++artificial;
    }
  }

  feas_tol_ = options_.feasibility_tolerance * std::max(rhs_scale, bound_scale);
  double cost_scale = 1.0;
  for (const Term& t : model.objective()) cost_scale = std::max(cost_scale, std::abs(t.coef));
  opt_tol_ = options_.optimality_tolerance * cost_scale;
  pivot_row_nz_.reserve(cols_);
}

void DenseSimplex::ComputeReducedCosts() {
  reduced_ = cost_;
  for (std::size_t r = 0; r < rows_; ++r) {
    const double cb = cost_[basis_[r]];
    if (cb == 0.0) continue;
    const double* row = &tableau_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
  }
  for (std::size_t r = 0; r < rows_; ++r) reduced_[basis_[r]] = 0.0;
}

long DenseSimplex::ChooseEntering(bool bland) const {
  long best = -1;
  double best_score = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (state_[j] == VarState::kBasic || upper_[j] <= 0.0) continue;
    const double d = reduced_[j];
    const bool improving = (state_[j] == VarState::kAtLower && d > opt_tol_) ||
                           (state_[j] == VarState::kAtUpper && d < -opt_tol_);
    if (!improving) continue;
    if (bland) return static_cast<long>(j);
    if (std::abs(d) > best_score) {
      best_score = std::abs(d);
      best = static_cast<long>(j);
    }
  }
  return best;
}

void DenseSimplex::Pivot(std::size_t row, std::size_t col) {
  double* prow = &tableau_[row * cols_];
  const double inv = 1.0 / prow[col];
  pivot_row_nz_.clear();
  for (std::size_t j = 0; j < cols_; ++j) {
    if (prow[j] != 0.0) {
      prow[j] *= inv;
      pivot_row_nz_.push_back(j);
    }
  }
  prow[col] = 1.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r == row) continue;
    double* trow = &tableau_[r * cols_];
    const double factor = trow[col];
    if (factor == 0.0) continue;
    for (std::size_t j : pivot_row_nz_) trow[j] -= factor * prow[j];
    trow[col] = 0.0;
  }
  const double dq = reduced_[col];
  if (dq != 0.0) {
    for (std::size_t j : pivot_row_nz_) reduced_[j] -= dq * prow[j];
  }
  reduced_[col] = 0.0;
}

DenseSimplex::PhaseResult DenseSimplex::RunPhase() {
  ComputeReducedCosts();
  int degenerate_run = 0;
  while (true) {
    if (iterations_ >= options_.max_iterations) return PhaseResult::kIterationLimit;
    if (options_.deadline && iterations_ % 64 == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      return PhaseResult::kTimeLimit;
    }
    const bool bland = degenerate_run >= options_.degenerate_pivots_before_bland;
    const long entering = ChooseEntering(bland);
    if (entering < 0) return PhaseResult::kOptimal;
    const auto q = static_cast<std::size_t>(entering);
    const double dir = state_[q] == VarState::kAtLower ? 1.0 : -1.0;

    // Harris pass 1: largest step keeping every basic variable within its
    // bounds relaxed by the feasibility tolerance.
    double relaxed_step = upper_[q];
    for (std::size_t r = 0; r < rows_; ++r) {
      const double g = dir * At(r, q);
      if (g > options_.pivot_tolerance) {
        relaxed_step = std::min(relaxed_step, (std::max(beta_[r], 0.0) + feas_tol_) / g);
      } else if (g < -options_.pivot_tolerance) {
        const double ub = upper_[basis_[r]];
        if (std::isfinite(ub)) {
          relaxed_step = std::min(relaxed_step, (ub - std::min(beta_[r], ub) + feas_tol_) / -g);
        }
      }
    }
    if (!std::isfinite(relaxed_step)) return PhaseResult::kUnbounded;

    // Pass 2: among the rows that block within the relaxed step pick the
    // largest pivot (or the lowest basic index under Bland's rule).
    long leave = -1;
    double leave_step = 0.0;
    double best_pivot = 0.0;
    std::size_t best_index = cols_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double g = dir * At(r, q);
      double step;
      if (g > options_.pivot_tolerance) {
        step = std::max(beta_[r], 0.0) / g;
      } else if (g < -options_.pivot_tolerance && std::isfinite(upper_[basis_[r]])) {
        const double ub = upper_[basis_[r]];
        step = std::max(ub - beta_[r], 0.0) / -g;
      } else {
        continue;
      }
      if (step > relaxed_step) continue;
      const bool better = bland ? basis_[r] < best_index : std::abs(g) > best_pivot;
      if (better) {
        leave = static_cast<long>(r);
        leave_step = step;
        best_pivot = std::abs(g);
        best_index = basis_[r];
      }
    }

    ++iterations_;
    if (bland) ++bland_pivots_;
    const bool flip = leave < 0 || (std::isfinite(upper_[q]) && upper_[q] <= leave_step);
    const double step = flip ? upper_[q] : leave_step;
    if (step <= feas_tol_) {
      ++degenerate_run;
    } else {
      degenerate_run = 0;
    }

    for (std::size_t r = 0; r < rows_; ++r) {
      const double a = At(r, q);
      if (a != 0.0) beta_[r] -= dir * step * a;
    }
    if (flip) {
      state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      continue;
    }

    const auto r = static_cast<std::size_t>(leave);
    const std::size_t leaving = basis_[r];
    const double g = dir * At(r, q);
    state_[leaving] = g > 0 ? VarState::kAtLower : VarState::kAtUpper;
    const double entering_value = (dir > 0 ? 0.0 : upper_[q]) + dir * step;
    Pivot(r, q);
    basis_[r] = q;
    state_[q] = VarState::kBasic;
    beta_[r] = entering_value;
  }
}

void DenseSimplex::DriveOutArtificials() {
  for (std::size_t r = 0; r < rows_; ++r) {
    if (basis_[r] < first_artificial_) continue;
    // Any non-artificial column with a usable entry can replace it; the
    // artificial sits at zero so the pivot is degenerate.
    std::size_t best = cols_;
    double best_abs = 1e-7;
    for (std::size_t j = 0; j < first_artificial_; ++j) {
      if (state_[j] == VarState::kBasic || upper_[j] <= 0.0) continue;
      if (std::abs(At(r, j)) > best_abs) {
        best_abs = std::abs(At(r, j));
        best = j;
      }
    }
    if (best == cols_) continue;  // redundant row
    const double entering_value = state_[best] == VarState::kAtUpper ? upper_[best] : 0.0;
    const std::size_t leaving = basis_[r];
    // Keep the other basic values consistent: the artificial's residual value
    // is moved onto the entering variable.
    const double delta = beta_[r] / At(r, best);
    for (std::size_t k = 0; k < rows_; ++k) {
      if (k != r) beta_[k] -= delta * At(k, best);
    }
    Pivot(r, best);
    basis_[r] = best;
    state_[best] = VarState::kBasic;
    beta_[r] = entering_value + delta;
    state_[leaving] = VarState::kAtLower;
  }
}

std::vector<double> DenseSimplex::ExtractValues() const {
  std::vector<double> y(cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (state_[j] == VarState::kAtUpper) y[j] = upper_[j];
  }
  for (std::size_t r = 0; r < rows_; ++r) y[basis_[r]] = beta_[r];
  std::vector<double> x(num_structural_);
  for (std::size_t j = 0; j < num_structural_; ++j) {
    x[j] = lower_[j] + std::clamp(y[j], 0.0, upper_[j]);
  }
  return x;
}

LpSolution DenseSimplex::Solve() {
  LpSolution result;
  auto finish = [&](LpStatus status) {
    result.status = status;
    result.iterations = iterations_;
    result.bland_pivots = bland_pivots_;
    return result;
  };

  if (first_artificial_ < cols_) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t j = first_artificial_; j < cols_; ++j) cost_[j] = -1.0;
    switch (RunPhase()) {
      case PhaseResult::kIterationLimit:
        return finish(LpStatus::kIterationLimit);
      case PhaseResult::kTimeLimit:
        return finish(LpStatus::kTimeLimit);
      case PhaseResult::kUnbounded:  // phase one is bounded by construction
      case PhaseResult::kOptimal:
        break;
    }
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] >= first_artificial_) infeasibility += std::max(beta_[r], 0.0);
    }
    if (infeasibility > 1e3 * feas_tol_) return finish(LpStatus::kInfeasible);
    for (std::size_t j = first_artificial_; j < cols_; ++j) {
      upper_[j] = 0.0;
      if (state_[j] != VarState::kBasic) state_[j] = VarState::kAtLower;
    }
    DriveOutArtificials();
  }

  std::fill(cost_.begin(), cost_.end(), 0.0);
  const double sense = model_.sense() == Sense::kMaximize ? 1.0 : -1.0;
  for (const Term& t : model_.objective()) {
    cost_[static_cast<std::size_t>(t.var)] = sense * t.coef;
  }
  switch (RunPhase()) {
    case PhaseResult::kIterationLimit:
      return finish(LpStatus::kIterationLimit);
    case PhaseResult::kTimeLimit:
      return finish(LpStatus::kTimeLimit);
    case PhaseResult::kUnbounded:
      return finish(LpStatus::kUnbounded);
    case PhaseResult::kOptimal:
      break;
  }

  for (std::size_t j = 0; j < cols_; ++j) {
    if (state_[j] == VarState::kBasic || upper_[j] <= 0.0) continue;
    const double wrong = state_[j] == VarState::kAtLower ? reduced_[j] : -reduced_[j];
    result.max_dual_infeasibility = std::max(result.max_dual_infeasibility, wrong);
  }
  result.values = ExtractValues();
  result.objective = model_.evaluate_objective(result.values);
  return finish(LpStatus::kOptimal);
}

}  // namespace

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
    case LpStatus::kTimeLimit:
      return "time-limit";
  }
  return "?";
}

LpSolution solve_lp(const MipModel& model, const LpOptions& options) {
  std::vector<double> lower, upper;
  lower.reserve(static_cast<std::size_t>(model.num_variables()));
  upper.reserve(static_cast<std::size_t>(model.num_variables()));
  for (const Variable& v : model.variables()) {
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  return solve_lp(model, lower, upper, options);
}

LpSolution solve_lp(const MipModel& model, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& options) {
  const auto n = static_cast<std::size_t>(model.num_variables());
  if (lower.size() != n || upper.size() != n) {
    throw Error("bound vectors do not match the model");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j])) {
      throw Error("variable " + model.variable(static_cast<int>(j)).name +
                  " needs a finite lower bound");
    }
    if (upper[j] < lower[j]) {
      LpSolution infeasible;
      infeasible.status = LpStatus::kInfeasible;
      return infeasible;
    }
  }
  DenseSimplex simplex(model, lower, upper, options);
  return simplex.Solve();
}

}  // namespace efp
