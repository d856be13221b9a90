// SPDX-License-Identifier: Apache-2.0

#include "efp/model.h"

#include <algorithm>
#include <cmath>

namespace efp {

int MipModel::add_variable(std::string name, double lower, double upper,
                           bool integer) {
  if (!std::isfinite(lower)) {
    throw Error("variable " + name + " needs a finite lower bound");
  }
  if (upper < lower) {
    throw Error("variable " + name + " has an empty domain");
  }
  const int id = num_variables();
  if (!index_.emplace(name, id).second) {
    throw Error("duplicate variable name " + name);
  }
  variables_.push_back({std::move(name), lower, upper, integer});
  return id;
}

std::vector<Term> MipModel::Normalize(std::vector<Term> terms, int num_vars) {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_vars) {
      throw Error("term references undeclared variable " +
                  std::to_string(t.var));
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  return merged;
}

void MipModel::add_constraint(std::string name, std::vector<Term> terms,
                              Relation relation, double rhs) {
  if (!index_.emplace(name, -1 - num_constraints()).second) {
    throw Error("duplicate constraint name " + name);
  }
  constraints_.push_back(
      {std::move(name), Normalize(std::move(terms), num_variables()), relation,
       rhs});
}

void MipModel::set_objective(std::vector<Term> terms, double offset) {
  objective_ = Normalize(std::move(terms), num_variables());
  objective_offset_ = offset;
}

int MipModel::num_integer() const {
  return static_cast<int>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.integer; }));
}

int MipModel::find_variable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return (it == index_.end() || it->second < 0) ? -1 : it->second;
}

void MipModel::set_bounds(int var, double lower, double upper) {
  auto& v = variables_.at(static_cast<std::size_t>(var));
  if (!std::isfinite(lower) || upper < lower) {
    throw Error("invalid bounds for variable " + v.name);
  }
  v.lower = lower;
  v.upper = upper;
}

double MipModel::evaluate_objective(std::span<const double> values) const {
  double total = objective_offset_;
  for (const Term& t : objective_) {
    total += t.coef * values[static_cast<std::size_t>(t.var)];
  }
  return total;
}

double MipModel::violation(const Constraint& c,
                           std::span<const double> values) const {
  double lhs = 0.0;
  for (const Term& t : c.terms) {
    lhs += t.coef * values[static_cast<std::size_t>(t.var)];
  }
  switch (c.relation) {
    case Relation::kLessEqual:
      return std::max(0.0, lhs - c.rhs);
    case Relation::kGreaterEqual:
      return std::max(0.0, c.rhs - lhs);
    case Relation::kEqual:
      return std::abs(lhs - c.rhs);
  }
  return 0.0;
}

FeasibilityReport check_feasibility(const MipModel& model,
                                    std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(model.num_variables())) {
    throw Error("value vector does not match the model's variables");
  }
  FeasibilityReport report;
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(j);
    const double x = values[static_cast<std::size_t>(j)];
    report.max_bound_violation =
        std::max({report.max_bound_violation, v.lower - x,
                  std::isfinite(v.upper) ? x - v.upper : 0.0});
    if (v.integer) {
      report.max_integrality_violation = std::max(
          report.max_integrality_violation, std::abs(x - std::round(x)));
    }
  }
  for (const Constraint& c : model.constraints()) {
    const double viol = model.violation(c, values);
    if (viol > report.max_row_violation) {
      report.max_row_violation = viol;
      report.worst_row = c.name;
    }
  }
  return report;
}

}  // namespace efp
