// SPDX-License-Identifier: Apache-2.0
//
// Comparison of the five linear relaxations on one instance, and the explicit
// solution maps between them:
//
//   I -> STM   the same point
//   L -> P     z_b = sum_i ph_ib
//   P -> U     u_b = sum_i v_ib x_ib - z_b
//
// For every instance LR_I <= LR_STM and LR_I <= LR_L <= LR_P <= LR_U.

#ifndef EFP_RELAXATIONS_H_
#define EFP_RELAXATIONS_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "efp/branch_and_bound.h"
#include "efp/formulations.h"

namespace efp {

struct RelaxationReport {
  // Indexed like kAllFormulations; empty if that LP did not solve.
  std::array<std::optional<double>, 5> value;
  std::array<double, 5> seconds{};
  std::optional<double> mip_optimum;
  // Human-readable description of each ordering breach beyond the tolerance.
  std::vector<std::string> violations;

  std::optional<double> operator[](FormulationKind kind) const {
    return value[static_cast<std::size_t>(kind)];
  }
  bool complete() const;
};

struct RelaxationOptions {
  BuildOptions build;
  LpOptions lp;
  double tolerance = 1e-6;
  // Also solve the MIP (with formulation U) and record its optimum.
  bool with_mip = false;
  MipLimits mip_limits;
};

RelaxationReport compare_relaxations(const Instance& inst,
                                     const RelaxationOptions& options = {});

// Ordering breaches of a report at the given tolerance.
std::vector<std::string> ordering_violations(const RelaxationReport& report,
                                             double tolerance);

// LR_I < LR_STM - tolerance.
bool strictly_tighter_than_stm(const RelaxationReport& report, double tolerance);
// LR_L < LR_P - tolerance and LR_P < LR_U - tolerance.
bool strict_chain(const RelaxationReport& report, double tolerance);

// Result of pushing an optimal relaxation point of one formulation through
// the solution map into another.
struct MappingCheck {
  double source_objective = 0.0;
  double target_objective = 0.0;
  double max_bound_violation = 0.0;
  double max_row_violation = 0.0;

  double objective_delta() const { return std::abs(target_objective - source_objective); }
  double max_residual() const { return std::max(max_bound_violation, max_row_violation); }
};

std::vector<double> map_l_to_p(const Formulation& l, const Formulation& p,
                               std::span<const double> l_values);
std::vector<double> map_p_to_u(const Instance& inst, const Formulation& p,
                               const Formulation& u,
                               std::span<const double> p_values);

// Solve the source relaxation, map its optimum and evaluate it in the target.
// Throws Error if the source LP does not solve to optimality.
MappingCheck check_i_to_stm(const Instance& inst, const BuildOptions& build = {});
MappingCheck check_l_to_p(const Instance& inst, const BuildOptions& build = {});
MappingCheck check_p_to_u(const Instance& inst, const BuildOptions& build = {});

}  // namespace efp

#endif  // EFP_RELAXATIONS_H_
