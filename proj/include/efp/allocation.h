// SPDX-License-Identifier: Apache-2.0
//
// Envy-free allocations for a fixed pricing.
//
// For a pricing p every bidder independently picks an item maximizing
// v_ib - p_i when that utility is non-negative. Ties go to the more expensive
// item, then to the lower item index. The resulting allocation x_p is envy-free
// and has maximum profit among all envy-free allocations for p; sol(p) is its
// profit.

#ifndef EFP_ALLOCATION_H_
#define EFP_ALLOCATION_H_

#include <optional>
#include <vector>

#include "efp/core.h"

namespace efp {

struct Outcome {
  Pricing pricing;
  Allocation allocation;
  double profit = 0.0;
  // u_b = v_{x(b),b} - p_{x(b)} for served bidders, 0 otherwise.
  std::vector<double> utilities;
};

// Fills profit and utilities for a given pricing and allocation. Does not check
// envy-freeness.
Outcome make_outcome(const Instance& inst, Pricing p, Allocation x);

struct Response {
  int item = 0;
  double utility = 0.0;

  friend bool operator==(const Response&, const Response&) = default;
};

std::optional<Response> best_response(const Instance& inst, const Pricing& p,
                                      int bidder);

Outcome envy_free_allocation(const Instance& inst, const Pricing& p);

// sol(p).
double profit(const Instance& inst, const Pricing& p);

struct EnvyViolation {
  int bidder = 0;
  // Item the bidder prefers to its assignment; empty when the bidder's own
  // utility is negative.
  std::optional<int> item;
  double excess = 0.0;
};

struct EnvyCheck {
  bool envy_free = true;
  std::vector<EnvyViolation> violations;

  explicit operator bool() const { return envy_free; }
};

EnvyCheck is_envy_free(const Instance& inst, const Pricing& p,
                       const Allocation& x, double tolerance = kTolerance);

// Exhaustive search over all (m+1)^n allocations. Throws TooLargeError when
// that count exceeds max_allocations.
Outcome allocation_brute_force(const Instance& inst, const Pricing& p,
                               double max_allocations = 1e7);

}  // namespace efp

#endif  // EFP_ALLOCATION_H_
