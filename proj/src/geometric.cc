// SPDX-License-Identifier: Apache-2.0

#include "efp/geometric.h"

#include <cmath>
#include <string>

namespace efp {

GeometricGrid::GeometricGrid(double apex, double eps) {
  if (!(apex > 0.0) || !std::isfinite(apex)) {
    throw NonPositiveApexError("grid apex must be positive, got " +
                               std::to_string(apex));
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidEpsilonError("grid eps must be positive, got " +
                              std::to_string(eps));
  }
  apex_ = apex;
  ratio_ = 1.0 + eps;
  log_ratio_ = std::log1p(eps);
}

double GeometricGrid::element(long k) const {
  return apex_ / std::pow(ratio_, static_cast<double>(k));
}

long GeometricGrid::floor_index(double x) const {
  auto k = static_cast<long>(std::ceil(std::log(apex_ / x) / log_ratio_));
  if (k < 0) k = 0;
  // The logarithm can be off by one near grid points.
  while (k > 0 && element(k - 1) <= x) --k;
  while (element(k) > x) ++k;
  return k;
}

double GeometricGrid::floor(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= apex_) return apex_;
  return element(floor_index(x));
}

bool GeometricGrid::contains(double x, double tolerance) const {
  if (x == 0.0) return true;
  if (x <= 0.0 || x > apex_ * (1.0 + tolerance)) return false;
  const double k = std::log(apex_ / x) / log_ratio_;
  return std::abs(k - std::round(k)) <= tolerance * std::max(1.0, std::abs(k));
}

double floor_geometric(double x, const GeometricGrid& grid) {
  if (x < 0.0) throw Error("floor_geometric needs a non-negative argument");
  return grid.floor(x);
}

namespace {

template <typename Shrink>
Pricing RoundOnto(const Instance& inst, const Pricing& p, double eps, Shrink shrink) {
  check_dimensions(inst, p);
  const GeometricGrid grid(derive_constants(inst).global_max, eps);
  std::vector<double> rounded(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    rounded[i] = p[i] > 0.0 ? grid.floor(shrink(p[i])) : 0.0;
  }
  return Pricing(std::move(rounded));
}

}  // namespace

Pricing round_pricing_half(const Instance& inst, const Pricing& p) {
  return RoundOnto(inst, p, 1.0, [](double x) { return 2.0 * x / 3.0; });
}

double rounding_divisor(double eps) {
  return 1.0 + std::sqrt(eps / (1.0 + eps));
}

Pricing round_pricing_eps(const Instance& inst, const Pricing& p, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InvalidEpsilonError("eps must lie in (0, 1), got " + std::to_string(eps));
  }
  const double r = rounding_divisor(eps);
  return RoundOnto(inst, p, eps, [r](double x) { return x / r; });
}

double guarantee_factor(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw InvalidEpsilonError("eps must lie in (0, 1], got " + std::to_string(eps));
  }
  return 1.0 / (2.0 * std::sqrt(eps * (1.0 + eps)) + 2.0 * eps + 1.0);
}

}  // namespace efp
