// SPDX-License-Identifier: Apache-2.0

#include "efp/oracle.h"

#include <string>
#include <vector>

namespace efp {

Outcome brute_force_optimal(const Instance& inst, const OracleLimits& limits) {
  const int m = inst.num_items();
  if (m > limits.max_items) {
    throw TooLargeError("brute-force oracle handles at most " +
                        std::to_string(limits.max_items) + " items, got " +
                        std::to_string(m));
  }
  std::vector<std::vector<double>> candidates(static_cast<std::size_t>(m));
  double vectors = 1.0;
  for (int i = 0; i < m; ++i) {
    auto& set = candidates[static_cast<std::size_t>(i)];
    set.push_back(0.0);
    for (const Neighbor& nb : inst.bidders_of(i)) set.push_back(nb.value);
    vectors *= static_cast<double>(set.size());
  }
  if (vectors > limits.max_price_vectors) {
    throw TooLargeError("brute-force oracle would enumerate " +
                        std::to_string(vectors) + " price vectors");
  }

  std::vector<std::size_t> digit(static_cast<std::size_t>(m), 0);
  std::vector<double> prices(static_cast<std::size_t>(m), 0.0);
  Outcome best = envy_free_allocation(inst, Pricing::Zero(m));
  while (true) {
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == candidates[k].size()) {
      digit[k] = 0;
      prices[k] = candidates[k][0];
      ++k;
    }
    if (k == digit.size()) break;
    prices[k] = candidates[k][digit[k]];
    Outcome out = envy_free_allocation(inst, Pricing(prices));
    if (out.profit > best.profit) best = std::move(out);
  }
  return best;
}

}  // namespace efp
