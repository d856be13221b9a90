// SPDX-License-Identifier: Apache-2.0
//
// Seeded random stream used by the market generators.
//
// The generator is SplitMix64 read as a counter-based generator: the k-th
// output is mix(seed + k * 0x9e3779b97f4a7c15). The stream is therefore fully
// determined by the seed and the number of draws taken so far. Gaussian draws
// use the Box-Muller transform over two consecutive uniforms.

#ifndef EFP_RNG_H_
#define EFP_RNG_H_

#include <cstdint>
#include <optional>

namespace efp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53 bits.
  double uniform();
  // Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on (0, hi]; the endpoint 0 is excluded.
  double uniform_positive(double hi) { return hi * (1.0 - uniform()); }
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  double normal(double mean, double stddev);

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

}  // namespace efp

#endif  // EFP_RNG_H_
