// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive search over candidate prices. Each p_i ranges over the values
// bidders place on item i plus 0. The result is a lower bound on the optimal
// profit; nothing guarantees an optimal pricing lies in the candidate set.

#ifndef EFP_ORACLE_H_
#define EFP_ORACLE_H_

#include "efp/allocation.h"

namespace efp {

struct OracleLimits {
  int max_items = 4;
  double max_price_vectors = 1e7;
};

// Throws TooLargeError when the instance exceeds the limits.
Outcome brute_force_optimal(const Instance& inst, const OracleLimits& limits = {});

}  // namespace efp

#endif  // EFP_ORACLE_H_
