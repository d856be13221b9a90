// SPDX-License-Identifier: Apache-2.0

#include "efp/model.h"

#include <gtest/gtest.h>

namespace efp {
namespace {

TEST(MipModelTest, VariablesAndNames) {
  MipModel model;
  EXPECT_EQ(model.add_variable("a", 0, 4), 0);
  EXPECT_EQ(model.add_binary("b"), 1);
  EXPECT_EQ(model.variable(1).upper, 1.0);
  EXPECT_TRUE(model.variable(1).integer);
  EXPECT_EQ(model.num_integer(), 1);
  EXPECT_EQ(model.find_variable("b"), 1);
  EXPECT_EQ(model.find_variable("c"), -1);
  EXPECT_THROW(model.add_variable("a", 0, 1), Error);
  EXPECT_THROW(model.add_variable("free", -kInfinity, 1), Error);
  EXPECT_THROW(model.add_variable("empty", 2, 1), Error);
}

TEST(MipModelTest, ConstraintTermsAreNormalized) {
  MipModel model;
  model.add_variable("x", 0, 1);
  model.add_variable("y", 0, 1);
  model.add_constraint("c", {{1, 2.0}, {0, 1.0}, {1, -2.0}, {0, 3.0}},
                       Relation::kLessEqual, 5);
  const Constraint& c = model.constraints()[0];
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_EQ(c.terms[0], (Term{0, 4.0}));
  EXPECT_THROW(model.add_constraint("d", {{2, 1.0}}, Relation::kEqual, 0), Error);
  EXPECT_THROW(model.add_constraint("c", {{0, 1.0}}, Relation::kEqual, 0), Error);
}

TEST(MipModelTest, ObjectiveAndViolation) {
  MipModel model;
  model.add_variable("x", 0, 10);
  model.add_variable("y", 0, 10);
  model.set_objective({{0, 2.0}, {1, 1.0}}, 1.5);
  const std::vector<double> at{3, 4};
  EXPECT_EQ(model.evaluate_objective(at), 11.5);

  model.add_constraint("le", {{0, 1}, {1, 1}}, Relation::kLessEqual, 5);
  model.add_constraint("ge", {{0, 1}}, Relation::kGreaterEqual, 4);
  model.add_constraint("eq", {{1, 1}}, Relation::kEqual, 4);
  EXPECT_EQ(model.violation(model.constraints()[0], at), 2.0);
  EXPECT_EQ(model.violation(model.constraints()[1], at), 1.0);
  EXPECT_EQ(model.violation(model.constraints()[2], at), 0.0);

  const FeasibilityReport report = check_feasibility(model, at);
  EXPECT_EQ(report.max_row_violation, 2.0);
  EXPECT_EQ(report.worst_row, "le");
  EXPECT_FALSE(report.feasible(1e-9, false));
}

TEST(MipModelTest, FeasibilityChecksBoundsAndIntegrality) {
  MipModel model;
  model.add_binary("x");
  model.add_variable("y", 1, 2);
  FeasibilityReport report = check_feasibility(model, std::vector<double>{0.5, 2.5});
  EXPECT_EQ(report.max_bound_violation, 0.5);
  EXPECT_EQ(report.max_integrality_violation, 0.5);
  report = check_feasibility(model, std::vector<double>{1, 1.5});
  EXPECT_TRUE(report.feasible(1e-9, true));
  EXPECT_THROW(check_feasibility(model, std::vector<double>{1}), Error);
}

TEST(MipModelTest, SetBounds) {
  MipModel model;
  model.add_variable("x", 0, 1);
  model.set_bounds(0, 0.25, 0.5);
  EXPECT_EQ(model.variable(0).lower, 0.25);
  EXPECT_EQ(model.variable(0).upper, 0.5);
  EXPECT_THROW(model.set_bounds(0, 1, 0), Error);
}

}  // namespace
}  // namespace efp
