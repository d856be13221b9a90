// SPDX-License-Identifier: Apache-2.0

#include "efp/geometric.h"

#include <gtest/gtest.h>

#include <cmath>

#include "efp/allocation.h"
#include "efp/generators.h"
#include "test_support.h"

namespace efp {
namespace {

// Geometric grid membership by explicit enumeration of d_k.
bool OnGrid(double x, double apex, double ratio) {
  if (x == 0.0) return true;
  for (double d = apex; d >= x * (1 - 1e-9); d /= ratio) {
    if (std::abs(d - x) <= 1e-9 * x) return true;
  }
  return false;
}

TEST(GeometricGridTest, FloorExamples) {
  const GeometricGrid grid(7, 1);
  EXPECT_EQ(grid.floor(5), 3.5);
  EXPECT_EQ(grid.floor(3.5), 3.5);
  EXPECT_EQ(grid.floor(0.9), 0.875);
  EXPECT_EQ(grid.floor(7), 7);
  EXPECT_EQ(grid.floor(100), 7);
  EXPECT_EQ(grid.floor(0), 0);
  EXPECT_EQ(floor_geometric(1.75, grid), 1.75);
  EXPECT_EQ(grid.floor_index(0.9), 3);
}

TEST(GeometricGridTest, ExactAtGridPoints) {
  for (double eps : {1.0, 0.5, 0.25, 0.1, 0.01}) {
    for (double apex : {1.0, 7.0, 13.37, 1e6}) {
      const GeometricGrid grid(apex, eps);
      for (long k = 0; k < 200; ++k) {
        const double d = grid.element(k);
        EXPECT_EQ(grid.floor_index(d), k) << apex << " " << eps << " " << k;
        EXPECT_EQ(grid.floor(d), d);
        EXPECT_TRUE(grid.contains(d));
        // Just below a grid point falls to the next element.
        EXPECT_EQ(grid.floor_index(std::nextafter(d, 0.0)), k + 1);
      }
    }
  }
}

TEST(GeometricGridTest, FloorBracketsItsArgument) {
  Rng rng(5);
  for (int trial = 0; trial < 20000; ++trial) {
    const double eps = rng.uniform(0.01, 1.0);
    const double apex = rng.uniform(0.5, 100.0);
    const double x = apex * std::pow(10.0, -rng.uniform(0.0, 6.0));
    const GeometricGrid grid(apex, eps);
    const double f = grid.floor(x);
    ASSERT_LE(f, x);
    ASSERT_GT(f * (1 + eps), x * (1 - 1e-12));
    ASSERT_TRUE(OnGrid(f, apex, 1 + eps));
  }
}

TEST(GeometricGridTest, Errors) {
  EXPECT_THROW(GeometricGrid(0, 1), NonPositiveApexError);
  EXPECT_THROW(GeometricGrid(-1, 1), NonPositiveApexError);
  EXPECT_THROW(GeometricGrid(1, 0), InvalidEpsilonError);
  EXPECT_THROW(GeometricGrid(1, -0.5), InvalidEpsilonError);
  EXPECT_THROW(round_pricing_eps(testing::ThreeItemMarket(), Pricing::Zero(3), 1.0), InvalidEpsilonError);
  EXPECT_THROW(round_pricing_eps(testing::ThreeItemMarket(), Pricing::Zero(3), 0.0), InvalidEpsilonError);
  EXPECT_THROW(guarantee_factor(0.0), InvalidEpsilonError);
  EXPECT_THROW(guarantee_factor(1.5), InvalidEpsilonError);
  // No valuations means no apex.
  EXPECT_THROW(round_pricing_half(Instance::FromEdges(1, 1, {}), Pricing::Zero(1)),
               NonPositiveApexError);
}

TEST(RoundingTest, ThreeItemMarketHalfRounding) {
  const Instance inst = testing::ThreeItemMarket();
  const Pricing p({6, 6, 3});
  const Pricing q = round_pricing_half(inst, p);
  EXPECT_EQ(q[0], 3.5);
  EXPECT_EQ(q[1], 3.5);
  EXPECT_EQ(q[2], 1.75);
  EXPECT_EQ(profit(inst, p), 21);
  EXPECT_EQ(profit(inst, q), 12.25);
  EXPECT_EQ(round_pricing_half(inst, Pricing::Zero(3)), Pricing::Zero(3));
}

TEST(RoundingTest, FactorsAndDivisor) {
  EXPECT_NEAR(rounding_divisor(0.25), 1.4472135955, 1e-9);
  EXPECT_NEAR(guarantee_factor(1.0), 0.171572875, 1e-9);
  EXPECT_NEAR(guarantee_factor(0.25), 0.3819660113, 1e-9);
  EXPECT_NEAR(guarantee_factor(0.01), 0.8190024876, 1e-9);
  EXPECT_EQ(kHalfRoundingFactor, 0.25);
  double previous = 0.0;
  for (double eps = 1.0; eps > 1e-8; eps /= 2) {
    EXPECT_GT(guarantee_factor(eps), previous);
    previous = guarantee_factor(eps);
  }
  EXPECT_GT(previous, 0.999);
}

TEST(RoundingTest, EpsRoundingAtApex) {
  const Instance inst = testing::ThreeItemMarket();
  const double r = rounding_divisor(0.5);
  const Pricing q = round_pricing_eps(inst, Pricing({7, 7, 7}), 0.5);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(q[i], 7 / r);
    EXPECT_TRUE(OnGrid(q[i], 7, 1.5));
  }
}

struct Pair {
  Instance inst;
  Pricing p;
};

std::vector<Pair> Corpus() {
  std::vector<Pair> out;
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const MarketModel model = static_cast<MarketModel>(k % 3);
    Instance inst = generate(preset(model, 8), static_cast<Seed>(k / 3 + 1));
    Pricing p = testing::RandomPricing(rng, inst);
    out.push_back({std::move(inst), std::move(p)});
  }
  return out;
}

const std::vector<Pair>& SharedCorpus() {
  static const std::vector<Pair> corpus = Corpus();
  return corpus;
}

TEST(RoundingTest, HalfRoundingComponentsAndGuarantee) {
  for (const Pair& c : SharedCorpus()) {
    const double V = derive_constants(c.inst).global_max;
    const Pricing q = round_pricing_half(c.inst, c.p);
    for (std::size_t i = 0; i < q.size(); ++i) {
      EXPECT_TRUE(OnGrid(q[i], V, 2));
      if (c.p[i] > 0) {
        EXPECT_GT(q[i], c.p[i] / 3);
        EXPECT_LE(q[i], 2 * c.p[i] / 3);
      } else {
        EXPECT_EQ(q[i], 0);
      }
    }
    EXPECT_GE(profit(c.inst, q), profit(c.inst, c.p) / 4 - 1e-6);
  }
}

TEST(RoundingTest, EpsRoundingComponentsAndGuarantee) {
  for (double eps : {0.5, 0.25, 0.1}) {
    const double r = 1 + std::sqrt(eps / (1 + eps));
    for (const Pair& c : SharedCorpus()) {
      const double V = derive_constants(c.inst).global_max;
      const Pricing q = round_pricing_eps(c.inst, c.p, eps);
      for (std::size_t i = 0; i < q.size(); ++i) {
        EXPECT_TRUE(OnGrid(q[i], V, 1 + eps));
        if (c.p[i] > 0) {
          EXPECT_GT(q[i], c.p[i] / ((1 + eps) * r) * (1 - 1e-12));
          EXPECT_LE(q[i], c.p[i] / r);
        }
      }
      EXPECT_GE(profit(c.inst, q), guarantee_factor(eps) * profit(c.inst, c.p) - 1e-6);
    }
  }
}

TEST(RoundingTest, ServedBiddersStayServed) {
  for (const Pair& c : SharedCorpus()) {
    const Allocation before = envy_free_allocation(c.inst, c.p).allocation;
    for (const Pricing& q : {round_pricing_half(c.inst, c.p), round_pricing_eps(c.inst, c.p, 0.25)}) {
      const Allocation after = envy_free_allocation(c.inst, q).allocation;
      for (int b = 0; b < c.inst.num_bidders(); ++b) {
        if (before.item_of(b)) EXPECT_TRUE(after.item_of(b).has_value());
      }
    }
  }
}

TEST(RoundingTest, FinerGridsKeepMoreProfit) {
  double coarse = 0.0, fine = 0.0;
  int counted = 0;
  for (const Pair& c : SharedCorpus()) {
    const double base = profit(c.inst, c.p);
    if (base <= 0) continue;
    coarse += profit(c.inst, round_pricing_eps(c.inst, c.p, 0.5)) / base;
    fine += profit(c.inst, round_pricing_eps(c.inst, c.p, 0.1)) / base;
    ++counted;
  }
  ASSERT_GT(counted, 900);
  EXPECT_GT(fine / counted, coarse / counted);
}

}  // namespace
}  // namespace efp
