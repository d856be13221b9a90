// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by every part of the library: the valuation matrix of a
// unit-demand market, pricings, allocations and the per-item / per-bidder
// maxima used as big-M constants.
//
// Items and bidders are 0-indexed everywhere in the library. The instance file
// format (see instance_io.h) is 1-indexed.

#ifndef EFP_CORE_H_
#define EFP_CORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace efp {

// Absolute tolerance for equality tests on valuations, prices and utilities.
inline constexpr double kTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateEdgeError : public Error {
 public:
  DuplicateEdgeError(int item, int bidder);
  int item() const { return item_; }
  int bidder() const { return bidder_; }

 private:
  int item_;
  int bidder_;
};

class NonPositiveValueError : public Error {
 public:
  NonPositiveValueError(int item, int bidder, double value);
  int item() const { return item_; }
  int bidder() const { return bidder_; }
  double value() const { return value_; }

 private:
  int item_;
  int bidder_;
  double value_;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Raised by exhaustive oracles whose enumeration would exceed their guard.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

struct Valuation {
  int item = 0;
  int bidder = 0;
  double value = 0.0;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

// A non-zero entry seen from one side of the bipartite graph.
struct Neighbor {
  int index = 0;  // bidder when stored per item, item when stored per bidder
  double value = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Sparse non-negative valuation matrix over items x bidders. Only strictly
// positive entries are stored; an absent pair has valuation 0. Immutable once
// built, so instances can be shared freely between threads.
class Instance {
 public:
  // Validates the edge list. Throws DuplicateEdgeError, NonPositiveValueError
  // or IndexOutOfRangeError. The result does not depend on edge order.
  static Instance FromEdges(int num_items, int num_bidders,
                            std::span<const Valuation> edges);

  int num_items() const { return num_items_; }
  int num_bidders() const { return num_bidders_; }
  std::size_t num_edges() const { return num_edges_; }

  // v_ib, or 0 if the pair is not stored.
  double value(int item, int bidder) const;

  // Stored entries of one item, sorted by bidder.
  std::span<const Neighbor> bidders_of(int item) const {
    return by_item_[static_cast<std::size_t>(item)];
  }
  // Stored entries of one bidder, sorted by item.
  std::span<const Neighbor> items_of(int bidder) const {
    return by_bidder_[static_cast<std::size_t>(bidder)];
  }

  // All stored entries ordered by (item, bidder).
  std::vector<Valuation> edges() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance() = default;

  int num_items_ = 0;
  int num_bidders_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::vector<Neighbor>> by_item_;
  std::vector<std::vector<Neighbor>> by_bidder_;
};

// Same as Instance::FromEdges.
Instance validate_instance(int num_items, int num_bidders,
                           std::span<const Valuation> edges);

// Non-negative price per item.
class Pricing {
 public:
  Pricing() = default;
  explicit Pricing(std::vector<double> prices);
  static Pricing Zero(int num_items);

  std::size_t size() const { return prices_.size(); }
  double operator[](std::size_t item) const { return prices_[item]; }
  std::span<const double> values() const { return prices_; }

  friend bool operator==(const Pricing&, const Pricing&) = default;

 private:
  std::vector<double> prices_;
};

// Unit-demand allocation: each bidder receives at most one item. Several
// bidders may receive copies of the same item.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(int num_bidders)
      : assignment_(static_cast<std::size_t>(num_bidders)) {}

  int num_bidders() const { return static_cast<int>(assignment_.size()); }
  std::optional<int> item_of(int bidder) const {
    return assignment_[static_cast<std::size_t>(bidder)];
  }
  void assign(int bidder, int item) {
    assignment_[static_cast<std::size_t>(bidder)] = item;
  }
  void clear(int bidder) {
    assignment_[static_cast<std::size_t>(bidder)].reset();
  }
  int num_served() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<std::optional<int>> assignment_;
};

// Big-M constants: R_i (item_max), S_b (bidder_max) and V (global_max).
struct DerivedConstants {
  std::vector<double> item_max;
  std::vector<double> bidder_max;
  double global_max = 0.0;
};

DerivedConstants derive_constants(const Instance& inst);

// Throws IndexOutOfRangeError unless the pricing has one entry per item.
void check_dimensions(const Instance& inst, const Pricing& p);

std::string to_string(const Pricing& p);

// Rounds v to 9 fractional digits, the precision of the instance text format.
// Generators emit quantized valuations so files reproduce them bit for bit.
double quantize_valuation(double v);

}  // namespace efp

#endif  // EFP_CORE_H_
