// SPDX-License-Identifier: Apache-2.0
//
// Best-bound branch-and-bound over the binary assignment variables of a
// formulation. Every node solves its LP relaxation from scratch with the
// branching decisions applied as variable bounds. The LP prices at every node
// are turned into an envy-free outcome, which is always feasible and refreshes
// the incumbent.

#ifndef EFP_BRANCH_AND_BOUND_H_
#define EFP_BRANCH_AND_BOUND_H_

#include <limits>
#include <string_view>

#include "efp/allocation.h"
#include "efp/formulations.h"
#include "efp/simplex.h"

namespace efp {

struct MipLimits {
  double time_seconds = 60.0;
  long max_nodes = std::numeric_limits<long>::max();
  // Open nodes beyond this switch node selection to depth-first dives.
  std::size_t max_open_nodes = 1'000'000;
  double gap_tolerance = 1e-6;
  double integrality_tolerance = 1e-6;
};

enum class MipStatus { kOptimal, kFeasible, kInfeasible };

std::string_view to_string(MipStatus status);

struct MipResult {
  MipStatus status = MipStatus::kInfeasible;
  Outcome incumbent;
  double incumbent_value = 0.0;
  double best_bound = 0.0;
  // (best_bound - incumbent_value) / max(1, |incumbent_value|)
  double gap = 0.0;
  long nodes = 0;
  long lp_iterations = 0;
  double wall_seconds = 0.0;
  // Root LP value, or NaN if the root LP did not finish.
  double root_relaxation = std::numeric_limits<double>::quiet_NaN();
  double root_relaxation_seconds = 0.0;
};

double relative_gap(double bound, double incumbent);

// x_p for the (clamped) prices of an LP solution of f.
Outcome primal_heuristic(const Instance& inst, const Formulation& f,
                         const LpSolution& lp);

MipResult solve_mip(const Instance& inst, const Formulation& f,
                    const MipLimits& limits = {});

}  // namespace efp

#endif  // EFP_BRANCH_AND_BOUND_H_
