// SPDX-License-Identifier: Apache-2.0

#include "efp/relaxations.h"

#include <chrono>
#include <cmath>
#include <sstream>

namespace efp {
namespace {

std::size_t Index(FormulationKind kind) { return static_cast<std::size_t>(kind); }

LpSolution SolveRelaxation(const Formulation& f) {
  LpSolution lp = solve_lp(f.model());
  if (!lp.optimal()) {
    throw Error("relaxation of " + std::string(to_string(f.kind())) +
                " ended with status " + std::string(to_string(lp.status)));
  }
  return lp;
}

MappingCheck Evaluate(const Formulation& target, std::span<const double> values,
                      double source_objective) {
  const FeasibilityReport report = check_feasibility(target.model(), values);
  MappingCheck check;
  check.source_objective = source_objective;
  check.target_objective = target.model().evaluate_objective(values);
  check.max_bound_violation = report.max_bound_violation;
  check.max_row_violation = report.max_row_violation;
  return check;
}

}  // namespace

bool RelaxationReport::complete() const {
  for (const auto& v : value) {
    if (!v) return false;
  }
  return true;
}

RelaxationReport compare_relaxations(const Instance& inst,
                                     const RelaxationOptions& options) {
  RelaxationReport report;
  for (FormulationKind kind : kAllFormulations) {
    const Formulation f(inst, kind, options.build);
    const auto start = std::chrono::steady_clock::now();
    const LpSolution lp = solve_lp(f.model(), options.lp);
    report.seconds[Index(kind)] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (lp.optimal()) report.value[Index(kind)] = lp.objective;
  }
  if (options.with_mip) {
    const Formulation u(inst, FormulationKind::kU, options.build);
    const MipResult mip = solve_mip(inst, u, options.mip_limits);
    if (mip.status == MipStatus::kOptimal) report.mip_optimum = mip.incumbent_value;
  }
  report.violations = ordering_violations(report, options.tolerance);
  return report;
}

std::vector<std::string> ordering_violations(const RelaxationReport& report,
                                             double tolerance) {
  std::vector<std::string> out;
  auto check = [&](FormulationKind lo, FormulationKind hi) {
    const auto a = report[lo];
    const auto b = report[hi];
    if (a && b && *a > *b + tolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "LR_" << to_string(lo) << " = " << *a << " exceeds LR_"
          << to_string(hi) << " = " << *b;
      out.push_back(msg.str());
    }
  };
  check(FormulationKind::kI, FormulationKind::kSTM);
  check(FormulationKind::kI, FormulationKind::kL);
  check(FormulationKind::kL, FormulationKind::kP);
  check(FormulationKind::kP, FormulationKind::kU);
  if (report.mip_optimum) {
    for (FormulationKind kind : kAllFormulations) {
      const auto lr = report[kind];
      if (lr && *report.mip_optimum > *lr + tolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "MIP optimum " << *report.mip_optimum << " exceeds LR_"
            << to_string(kind) << " = " << *lr;
        out.push_back(msg.str());
      }
    }
  }
  return out;
}

bool strictly_tighter_than_stm(const RelaxationReport& report, double tolerance) {
  const auto i = report[FormulationKind::kI];
  const auto stm = report[FormulationKind::kSTM];
  return i && stm && *i < *stm - tolerance;
}

bool strict_chain(const RelaxationReport& report, double tolerance) {
  const auto l = report[FormulationKind::kL];
  const auto p = report[FormulationKind::kP];
  const auto u = report[FormulationKind::kU];
  return l && p && u && *l < *p - tolerance && *p < *u - tolerance;
}

std::vector<double> map_l_to_p(const Formulation& l, const Formulation& p,
                               std::span<const double> l_values) {
  std::vector<double> out(static_cast<std::size_t>(p.model().num_variables()), 0.0);
  for (int i = 0; i < l.num_items(); ++i) {
    out[static_cast<std::size_t>(p.price_var(i))] =
        l_values[static_cast<std::size_t>(l.price_var(i))];
    for (int b = 0; b < l.num_bidders(); ++b) {
      out[static_cast<std::size_t>(p.x_var(i, b))] =
          l_values[static_cast<std::size_t>(l.x_var(i, b))];
      out[static_cast<std::size_t>(p.aux_var(i, b))] +=
          l_values[static_cast<std::size_t>(l.aux_var(i, b))];
    }
  }
  return out;
}

std::vector<double> map_p_to_u(const Instance& inst, const Formulation& p,
                               const Formulation& u,
                               std::span<const double> p_values) {
  std::vector<double> out(static_cast<std::size_t>(u.model().num_variables()), 0.0);
  for (int i = 0; i < p.num_items(); ++i) {
    out[static_cast<std::size_t>(u.price_var(i))] =
        p_values[static_cast<std::size_t>(p.price_var(i))];
  }
  for (int b = 0; b < p.num_bidders(); ++b) {
    double value = 0.0;
    for (int i = 0; i < p.num_items(); ++i) {
      const double x = p_values[static_cast<std::size_t>(p.x_var(i, b))];
      out[static_cast<std::size_t>(u.x_var(i, b))] = x;
      value += inst.value(i, b) * x;
    }
    out[static_cast<std::size_t>(u.aux_var(0, b))] =
        value - p_values[static_cast<std::size_t>(p.aux_var(0, b))];
  }
  return out;
}

MappingCheck check_i_to_stm(const Instance& inst, const BuildOptions& build) {
  const Formulation i(inst, FormulationKind::kI, build);
  const Formulation stm(inst, FormulationKind::kSTM, build);
  const LpSolution lp = SolveRelaxation(i);
  return Evaluate(stm, lp.values, lp.objective);
}

MappingCheck check_l_to_p(const Instance& inst, const BuildOptions& build) {
  const Formulation l(inst, FormulationKind::kL, build);
  const Formulation p(inst, FormulationKind::kP, build);
  const LpSolution lp = SolveRelaxation(l);
  return Evaluate(p, map_l_to_p(l, p, lp.values), lp.objective);
}

MappingCheck check_p_to_u(const Instance& inst, const BuildOptions& build) {
  const Formulation p(inst, FormulationKind::kP, build);
  const Formulation u(inst, FormulationKind::kU, build);
  const LpSolution lp = SolveRelaxation(p);
  return Evaluate(u, map_p_to_u(inst, p, u, lp.values), lp.objective);
}

}  // namespace efp
