// SPDX-License-Identifier: Apache-2.0
//
// Solver-agnostic linear model: bounded variables with optional integrality, a
// linear objective and named linear constraints.

#ifndef EFP_MODEL_H_
#define EFP_MODEL_H_

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "efp/core.h"

namespace efp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class Sense { kMaximize, kMinimize };

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by variable, no zero coefficients
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class MipModel {
 public:
  explicit MipModel(Sense sense = Sense::kMaximize) : sense_(sense) {}

  // Names must be unique. Binary variables get bounds [0, 1].
  int add_variable(std::string name, double lower, double upper,
                   bool integer = false);
  int add_binary(std::string name) { return add_variable(std::move(name), 0.0, 1.0, true); }

  // Terms on the same variable are merged and zero coefficients dropped.
  // Every variable must already exist.
  void add_constraint(std::string name, std::vector<Term> terms,
                      Relation relation, double rhs);
  void set_objective(std::vector<Term> terms, double offset = 0.0);

  Sense sense() const { return sense_; }
  std::span<const Variable> variables() const { return variables_; }
  std::span<const Constraint> constraints() const { return constraints_; }
  std::span<const Term> objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_integer() const;
  const Variable& variable(int j) const {
    return variables_[static_cast<std::size_t>(j)];
  }

  // -1 if absent.
  int find_variable(std::string_view name) const;

  void set_bounds(int var, double lower, double upper);

  double evaluate_objective(std::span<const double> values) const;
  // Signed violation of a constraint at values; 0 when satisfied.
  double violation(const Constraint& c, std::span<const double> values) const;

 private:
  static std::vector<Term> Normalize(std::vector<Term> terms, int num_vars);

  Sense sense_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  double objective_offset_ = 0.0;
  std::unordered_map<std::string, int> index_;
};

struct FeasibilityReport {
  double max_bound_violation = 0.0;
  double max_row_violation = 0.0;
  double max_integrality_violation = 0.0;
  std::string worst_row;  // name of the most violated constraint, if any

  bool feasible(double tolerance, bool check_integrality) const {
    return max_bound_violation <= tolerance &&
           max_row_violation <= tolerance &&
           (!check_integrality || max_integrality_violation <= tolerance);
  }
};

FeasibilityReport check_feasibility(const MipModel& model,
                                    std::span<const double> values);

}  // namespace efp

#endif  // EFP_MODEL_H_
