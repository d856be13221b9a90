// SPDX-License-Identifier: Apache-2.0
//
// Linear relaxation solver: two-phase primal simplex on a dense tableau with
// bounded variables. Nonbasic variables sit at either bound, so x <= 1 style
// bounds never become rows. Dantzig pricing with a Harris ratio test; after
// a run of degenerate pivots the solver switches to Bland's rule until it
// makes progress again.

#ifndef EFP_SIMPLEX_H_
#define EFP_SIMPLEX_H_

#include <chrono>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "efp/model.h"

namespace efp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kTimeLimit };

std::string_view to_string(LpStatus status);

struct LpOptions {
  long max_iterations = 1'000'000;
  int degenerate_pivots_before_bland = 1000;
  // Relative tolerances; each is scaled by the magnitude of the data it tests.
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> values;  // one per model variable, valid when optimal
  long iterations = 0;
  long bland_pivots = 0;
  // Largest reduced cost of the wrong sign at termination.
  double max_dual_infeasibility = 0.0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Solves the relaxation of model (integrality dropped).
LpSolution solve_lp(const MipModel& model, const LpOptions& options = {});

// Same, with the variable bounds replaced by lower/upper.
LpSolution solve_lp(const MipModel& model, std::span<const double> lower,
                    std::span<const double> upper,
                    const LpOptions& options = {});

}  // namespace efp

#endif  // EFP_SIMPLEX_H_
