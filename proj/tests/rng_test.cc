// SPDX-License-Identifier: Apache-2.0

#include "efp/rng.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace efp {
namespace {

TEST(RngTest, MatchesSplitMix64ReferenceStream) {
  // Published SplitMix64 outputs for seed 1234567.
  Rng rng(1234567);
  EXPECT_EQ(rng.next_u64(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next_u64(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next_u64(), 9817491932198370423ULL);
  EXPECT_EQ(rng.next_u64(), 4593380528125082431ULL);
  EXPECT_EQ(rng.next_u64(), 16408922859458223821ULL);
  EXPECT_EQ(rng.draws(), 5u);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, UniformRanges) {
  Rng rng(7);
  double sum = 0.0;
  constexpr int kDraws = 100000;
  for (int k = 0; k < kDraws; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    const double q = rng.uniform_positive(200.0);
    ASSERT_GT(q, 0.0);
    ASSERT_LE(q, 200.0);
    const double w = rng.uniform(140.0, 190.0);
    ASSERT_GE(w, 140.0);
    ASSERT_LE(w, 190.0);
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 0.01);
}

TEST(RngTest, BelowIsUniform) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  constexpr int kDraws = 70000;
  for (int k = 0; k < kDraws; ++k) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++counts[x];
  }
  for (int c : counts) EXPECT_NEAR(c, kDraws / 7.0, 500.0);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(RngTest, NormalMoments) {
  Rng rng(13);
  constexpr int kDraws = 200000;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const double z = rng.normal(3.0, 2.0);
    sum += z;
    sq += (z - 3.0) * (z - 3.0);
  }
  EXPECT_NEAR(sum / kDraws, 3.0, 0.02);
  EXPECT_NEAR(std::sqrt(sq / kDraws), 2.0, 0.02);
}

TEST(RngTest, NormalUsesTwoUniformsPerPair) {
  Rng rng(1);
  rng.normal(0, 1);
  EXPECT_EQ(rng.draws(), 2u);
  rng.normal(0, 1);
  EXPECT_EQ(rng.draws(), 2u);
  rng.normal(0, 1);
  EXPECT_EQ(rng.draws(), 4u);
}

}  // namespace
}  // namespace efp
