// SPDX-License-Identifier: Apache-2.0
//
// Prices restricted to a geometric grid d_k = V / (1 + eps)^k, k >= 0, where V
// is the largest valuation of the instance.
//
// Rounding a pricing p down onto the grid loses at most a constant factor of
// profit:
//   * eps = 1:      p~_i = floor(2 p_i / 3) keeps sol(p~) >= sol(p) / 4;
//   * 0 < eps < 1:  p~_i = floor(p_i / r) with r = 1 + sqrt(eps / (1 + eps))
//                   keeps sol(p~) >= sol(p) / (2 sqrt(eps (1 + eps)) + 2 eps + 1).
//
// Conventions outside the grid's natural domain: floor(0) = 0 and
// floor(x) = V for x >= V.

#ifndef EFP_GEOMETRIC_H_
#define EFP_GEOMETRIC_H_

#include "efp/core.h"

namespace efp {

class NonPositiveApexError : public Error {
 public:
  using Error::Error;
};

class InvalidEpsilonError : public Error {
 public:
  using Error::Error;
};

class GeometricGrid {
 public:
  // Throws NonPositiveApexError unless apex > 0, InvalidEpsilonError unless
  // eps > 0.
  GeometricGrid(double apex, double eps);

  double apex() const { return apex_; }
  double ratio() const { return ratio_; }
  double eps() const { return ratio_ - 1.0; }

  // d_k.
  double element(long k) const;
  // Largest grid element <= x, as its index k (x in (0, V)).
  long floor_index(double x) const;
  // Grid value for x; see the conventions above. x must be >= 0.
  double floor(double x) const;
  // True if x is 0 or within relative tolerance of some d_k.
  bool contains(double x, double tolerance = 1e-9) const;

 private:
  double apex_;
  double ratio_;
  double log_ratio_;
};

double floor_geometric(double x, const GeometricGrid& grid);

// eps = 1 rounding of 2p/3 onto the grid anchored at V.
Pricing round_pricing_half(const Instance& inst, const Pricing& p);

// Rounding of p / r onto the grid with ratio 1 + eps, 0 < eps < 1.
Pricing round_pricing_eps(const Instance& inst, const Pricing& p, double eps);

// r = 1 + sqrt(eps / (1 + eps)).
double rounding_divisor(double eps);

// 1 / (2 sqrt(eps (1 + eps)) + 2 eps + 1) for 0 < eps <= 1.
double guarantee_factor(double eps);

// Factor of round_pricing_half.
inline constexpr double kHalfRoundingFactor = 0.25;

}  // namespace efp

#endif  // EFP_GEOMETRIC_H_
