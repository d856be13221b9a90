// SPDX-License-Identifier: Apache-2.0

#include "efp/branch_and_bound.h"

#include <gtest/gtest.h>

#include <cmath>

#include "efp/generators.h"
#include "efp/oracle.h"
#include "test_support.h"

namespace efp {
namespace {

void ExpectConsistent(const Instance& inst, const MipResult& r, double gap_tolerance = 1e-6) {
  EXPECT_GE(r.best_bound, r.incumbent_value - 1e-6);
  EXPECT_GE(r.gap, 0.0);
  EXPECT_EQ(r.status == MipStatus::kOptimal, r.gap <= gap_tolerance);
  EXPECT_DOUBLE_EQ(r.gap, relative_gap(r.best_bound, r.incumbent_value));
  // The incumbent is a real envy-free outcome worth what it claims.
  EXPECT_TRUE(is_envy_free(inst, r.incumbent.pricing, r.incumbent.allocation, 1e-9));
  EXPECT_NEAR(profit(inst, r.incumbent.pricing), r.incumbent_value, 1e-9);
}

TEST(RelativeGapTest, Definition) {
  EXPECT_EQ(relative_gap(10, 10), 0.0);
  EXPECT_EQ(relative_gap(12, 10), 0.2);
  EXPECT_EQ(relative_gap(0.5, 0.25), 0.25);
  EXPECT_EQ(relative_gap(0, 0), 0.0);
}

TEST(SolveMipTest, ThreeItemMarketEveryFormulation) {
  const Instance inst = testing::ThreeItemMarket();
  for (FormulationKind kind : kAllFormulations) {
    for (bool bound : {true, false}) {
      const Formulation f(inst, kind, BuildOptions{bound});
      const MipResult r = solve_mip(inst, f);
      EXPECT_EQ(r.status, MipStatus::kOptimal) << to_string(kind);
      EXPECT_NEAR(r.incumbent_value, 21.0, 1e-6) << to_string(kind);
      EXPECT_FALSE(std::isnan(r.root_relaxation));
      EXPECT_GE(r.root_relaxation, 21.0 - 1e-6);
      ExpectConsistent(inst, r);
    }
  }
}

TEST(SolveMipTest, SingleBidderPaysItsValuation) {
  const Instance inst = testing::SingleEdge(5);
  for (FormulationKind kind : kAllFormulations) {
    const MipResult r = solve_mip(inst, Formulation(inst, kind));
    EXPECT_EQ(r.status, MipStatus::kOptimal);
    EXPECT_NEAR(r.incumbent_value, 5.0, 1e-9);
    EXPECT_NEAR(r.incumbent.pricing[0], 5.0, 1e-9);
  }
}

TEST(SolveMipTest, EmptyMarket) {
  const Instance inst = Instance::FromEdges(2, 2, {});
  const MipResult r = solve_mip(inst, Formulation(inst, FormulationKind::kU));
  EXPECT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_EQ(r.incumbent_value, 0.0);
}

TEST(SolveMipTest, FormulationsAgreeOnRandomMarkets) {
  Rng rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = testing::RandomInstance(rng, 6, 6, 0.35);
    double lo = INFINITY, hi = -INFINITY;
    for (FormulationKind kind : kAllFormulations) {
      const MipResult r = solve_mip(inst, Formulation(inst, kind));
      ASSERT_EQ(r.status, MipStatus::kOptimal) << to_string(kind) << " trial " << trial;
      ExpectConsistent(inst, r);
      lo = std::min(lo, r.incumbent_value);
      hi = std::max(hi, r.incumbent_value);
    }
    EXPECT_LE(hi - lo, 1e-6) << "trial " << trial;
  }
}

TEST(SolveMipTest, PriceBoundDoesNotChangeOptimum) {
  for (Seed seed = 1; seed <= 6; ++seed) {
    const Instance inst = generate(preset(MarketModel::kPopularity, 6), seed);
    for (FormulationKind kind : {FormulationKind::kL, FormulationKind::kP, FormulationKind::kU}) {
      const MipResult a = solve_mip(inst, Formulation(inst, kind));
      const MipResult b = solve_mip(inst, Formulation(inst, kind, BuildOptions{false}));
      ASSERT_EQ(b.status, MipStatus::kOptimal);
      EXPECT_NEAR(a.incumbent_value, b.incumbent_value, 1e-6 * std::max(1.0, a.incumbent_value));
    }
  }
}

TEST(SolveMipTest, OptimumDominatesCandidatePriceOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(3));
    const int n = 1 + static_cast<int>(rng.below(5));
    const Instance inst = testing::RandomInstance(rng, m, n, 0.7);
    const double oracle = brute_force_optimal(inst).profit;
    const MipResult r = solve_mip(inst, Formulation(inst, FormulationKind::kU));
    ASSERT_EQ(r.status, MipStatus::kOptimal);
    EXPECT_GE(r.incumbent_value, oracle - 1e-6) << "trial " << trial;
  }
}

TEST(SolveMipTest, TimeLimitGivesHonestBound) {
  const Instance inst = generate(preset(MarketModel::kPopularity, 20), 1);
  MipLimits limits;
  limits.time_seconds = 0.001;
  const MipResult r = solve_mip(inst, Formulation(inst, FormulationKind::kSTM), limits);
  EXPECT_EQ(r.status, MipStatus::kFeasible);
  EXPECT_GT(r.gap, 0.0);
  ExpectConsistent(inst, r);
  // Every outcome's profit is at most what each bidder values most.
  double top = 0.0;
  for (double s : derive_constants(inst).bidder_max) top += s;
  EXPECT_LE(r.best_bound, top + 1e-9);
  // Any feasible profit is a lower bound on the optimum, hence on best_bound.
  MipLimits quick;
  quick.time_seconds = 5;
  const MipResult other = solve_mip(inst, Formulation(inst, FormulationKind::kU), quick);
  EXPECT_GE(r.best_bound, other.incumbent_value - 1e-6);
}

TEST(SolveMipTest, NodeLimitBoundStaysAboveOptimum) {
  for (Seed seed = 1; seed <= 4; ++seed) {
    const Instance inst = generate(preset(MarketModel::kCharacteristics, 8), seed);
    const MipResult full = solve_mip(inst, Formulation(inst, FormulationKind::kU));
    ASSERT_EQ(full.status, MipStatus::kOptimal);
    for (long nodes : {1L, 3L, 10L}) {
      MipLimits limits;
      limits.max_nodes = nodes;
      const MipResult r = solve_mip(inst, Formulation(inst, FormulationKind::kSTM), limits);
      EXPECT_GE(r.best_bound, full.incumbent_value - 1e-6);
      EXPECT_LE(r.incumbent_value, full.incumbent_value + 1e-6);
      ExpectConsistent(inst, r);
    }
  }
}

TEST(SolveMipTest, DepthFirstFallbackFindsSameOptimum) {
  for (Seed seed = 1; seed <= 3; ++seed) {
    const Instance inst = generate(preset(MarketModel::kNeighborhood, 7), seed);
    const MipResult best_first = solve_mip(inst, Formulation(inst, FormulationKind::kP));
    MipLimits limits;
    limits.max_open_nodes = 1;
    const MipResult diving = solve_mip(inst, Formulation(inst, FormulationKind::kP), limits);
    ASSERT_EQ(diving.status, MipStatus::kOptimal);
    EXPECT_NEAR(diving.incumbent_value, best_first.incumbent_value, 1e-6);
  }
}

TEST(PrimalHeuristicTest, ReadsPricesFromLp) {
  const Instance inst = testing::ThreeItemMarket();
  const Formulation f(inst, FormulationKind::kU);
  LpSolution lp;
  lp.status = LpStatus::kOptimal;
  lp.values.assign(static_cast<std::size_t>(f.model().num_variables()), 0.0);
  lp.values[static_cast<std::size_t>(f.price_var(0))] = 6;
  lp.values[static_cast<std::size_t>(f.price_var(1))] = 6;
  lp.values[static_cast<std::size_t>(f.price_var(2))] = 3;
  EXPECT_EQ(primal_heuristic(inst, f, lp).profit, 21.0);

  lp.values.assign(lp.values.size(), 0.0);
  const Outcome zero = primal_heuristic(inst, f, lp);
  EXPECT_EQ(zero.profit, 0.0);
  EXPECT_TRUE(is_envy_free(inst, zero.pricing, zero.allocation));
}

TEST(PrimalHeuristicTest, RootValueNeverExceedsOptimum) {
  for (Seed seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate(preset(MarketModel::kPopularity, 7), seed);
    for (FormulationKind kind : kAllFormulations) {
      const Formulation f(inst, kind);
      const LpSolution lp = solve_lp(f.model());
      ASSERT_TRUE(lp.optimal());
      const MipResult r = solve_mip(inst, f);
      EXPECT_LE(primal_heuristic(inst, f, lp).profit, r.incumbent_value + 1e-9);
    }
  }
}

}  // namespace
}  // namespace efp
