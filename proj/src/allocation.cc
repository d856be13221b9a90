// SPDX-License-Identifier: Apache-2.0

#include "efp/allocation.h"

#include <cmath>

namespace efp {
namespace {

// True if (utility a, price a, item a) beats (utility b, price b, item b).
bool Prefer(double util_a, double price_a, int item_a, double util_b,
            double price_b, int item_b) {
  if (std::abs(util_a - util_b) > kTolerance) return util_a > util_b;
  if (std::abs(price_a - price_b) > kTolerance) return price_a > price_b;
  return item_a < item_b;
}

}  // namespace

Outcome make_outcome(const Instance& inst, Pricing p, Allocation x) {
  check_dimensions(inst, p);
  Outcome out;
  out.utilities.assign(static_cast<std::size_t>(inst.num_bidders()), 0.0);
  for (int b = 0; b < inst.num_bidders(); ++b) {
    if (auto i = x.item_of(b)) {
      out.profit += p[static_cast<std::size_t>(*i)];
      out.utilities[static_cast<std::size_t>(b)] =
          inst.value(*i, b) - p[static_cast<std::size_t>(*i)];
    }
  }
  out.pricing = std::move(p);
  out.allocation = std::move(x);
  return out;
}

std::optional<Response> best_response(const Instance& inst, const Pricing& p,
                                      int bidder) {
  check_dimensions(inst, p);
  std::optional<Response> best;
  double best_price = 0.0;
  auto edges = inst.items_of(bidder);
  std::size_t next_edge = 0;
  for (int i = 0; i < inst.num_items(); ++i) {
    double v = 0.0;
    if (next_edge < edges.size() && edges[next_edge].index == i) {
      v = edges[next_edge++].value;
    }
    const double price = p[static_cast<std::size_t>(i)];
    const double utility = v - price;
    if (utility < -kTolerance) continue;
    if (!best || Prefer(utility, price, i, best->utility, best_price,
                        best->item)) {
      best = Response{i, utility};
      best_price = price;
    }
  }
  return best;
}

Outcome envy_free_allocation(const Instance& inst, const Pricing& p) {
  Allocation x(inst.num_bidders());
  for (int b = 0; b < inst.num_bidders(); ++b) {
    if (auto r = best_response(inst, p, b)) x.assign(b, r->item);
  }
  return make_outcome(inst, p, std::move(x));
}

double profit(const Instance& inst, const Pricing& p) {
  return envy_free_allocation(inst, p).profit;
}

EnvyCheck is_envy_free(const Instance& inst, const Pricing& p,
                       const Allocation& x, double tolerance) {
  check_dimensions(inst, p);
  EnvyCheck check;
  for (int b = 0; b < inst.num_bidders(); ++b) {
    double own = 0.0;
    if (auto i = x.item_of(b)) {
      own = inst.value(*i, b) - p[static_cast<std::size_t>(*i)];
    }
    if (own < -tolerance) {
      check.violations.push_back({b, std::nullopt, -own});
    }
    for (int k = 0; k < inst.num_items(); ++k) {
      const double alt = inst.value(k, b) - p[static_cast<std::size_t>(k)];
      if (alt > own + tolerance) {
        check.violations.push_back({b, k, alt - own});
      }
    }
  }
  check.envy_free = check.violations.empty();
  return check;
}

Outcome allocation_brute_force(const Instance& inst, const Pricing& p,
                               double max_allocations) {
  check_dimensions(inst, p);
  const int m = inst.num_items();
  const int n = inst.num_bidders();
  const double count = std::pow(static_cast<double>(m + 1), n);
  if (count > max_allocations) {
    throw TooLargeError("allocation enumeration needs " +
                        std::to_string(count) + " candidates");
  }

  // choice[b] == m means bidder b receives nothing.
  std::vector<int> choice(static_cast<std::size_t>(n), m);
  std::optional<Outcome> best;
  while (true) {
    Allocation x(n);
    for (int b = 0; b < n; ++b) {
      if (choice[static_cast<std::size_t>(b)] < m) {
        x.assign(b, choice[static_cast<std::size_t>(b)]);
      }
    }
    if (is_envy_free(inst, p, x)) {
      Outcome o = make_outcome(inst, p, std::move(x));
      if (!best || o.profit > best->profit + kTolerance) best = std::move(o);
    }
    int b = 0;
    while (b < n && choice[static_cast<std::size_t>(b)] == 0) {
      choice[static_cast<std::size_t>(b)] = m;
      ++b;
    }
    if (b == n) break;
    --choice[static_cast<std::size_t>(b)];
  }
  // The empty allocation is envy-free only if no bidder has positive utility,
  // but some allocation is always envy-free (x_p), so best is set.
  return std::move(*best);
}

}  // namespace efp
