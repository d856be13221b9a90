// SPDX-License-Identifier: Apache-2.0

#include "efp/core.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace efp {
namespace {

std::string EdgeLabel(int item, int bidder) {
  std::ostringstream out;
  out << "(item " << item << ", bidder " << bidder << ")";
  return out.str();
}

}  // namespace

DuplicateEdgeError::DuplicateEdgeError(int item, int bidder)
    : Error("duplicate valuation for " + EdgeLabel(item, bidder)),
      item_(item),
      bidder_(bidder) {}

NonPositiveValueError::NonPositiveValueError(int item, int bidder,
                                             double value)
    : Error("valuation " + std::to_string(value) + " for " +
            EdgeLabel(item, bidder) + " is not strictly positive"),
      item_(item),
      bidder_(bidder),
      value_(value) {}

Instance Instance::FromEdges(int num_items, int num_bidders,
                             std::span<const Valuation> edges) {
  if (num_items < 1 || num_bidders < 1) {
    throw IndexOutOfRangeError("an instance needs at least one item and one "
                               "bidder");
  }
  Instance inst;
  inst.num_items_ = num_items;
  inst.num_bidders_ = num_bidders;
  inst.by_item_.resize(static_cast<std::size_t>(num_items));
  inst.by_bidder_.resize(static_cast<std::size_t>(num_bidders));

  for (const Valuation& e : edges) {
    if (e.item < 0 || e.item >= num_items || e.bidder < 0 ||
        e.bidder >= num_bidders) {
      throw IndexOutOfRangeError(EdgeLabel(e.item, e.bidder) +
                                 " outside the market");
    }
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
      throw NonPositiveValueError(e.item, e.bidder, e.value);
    }
    inst.by_item_[static_cast<std::size_t>(e.item)].push_back(
        {e.bidder, e.value});
    inst.by_bidder_[static_cast<std::size_t>(e.bidder)].push_back(
        {e.item, e.value});
  }

  auto by_index = [](const Neighbor& a, const Neighbor& b) {
    return a.index < b.index;
  };
  for (std::size_t i = 0; i < inst.by_item_.size(); ++i) {
    auto& row = inst.by_item_[i];
    std::sort(row.begin(), row.end(), by_index);
    auto dup = std::adjacent_find(
        row.begin(), row.end(),
        [](const Neighbor& a, const Neighbor& b) { return a.index == b.index; });
    if (dup != row.end()) {
      throw DuplicateEdgeError(static_cast<int>(i), dup->index);
    }
  }
  for (auto& col : inst.by_bidder_) {
    std::sort(col.begin(), col.end(), by_index);
  }
  inst.num_edges_ = edges.size();
  return inst;
}

double Instance::value(int item, int bidder) const {
  const auto& row = by_bidder_[static_cast<std::size_t>(bidder)];
  auto it = std::lower_bound(
      row.begin(), row.end(), item,
      [](const Neighbor& n, int target) { return n.index < target; });
  return (it != row.end() && it->index == item) ? it->value : 0.0;
}

std::vector<Valuation> Instance::edges() const {
  std::vector<Valuation> out;
  out.reserve(num_edges_);
  for (int i = 0; i < num_items_; ++i) {
    for (const Neighbor& nb : bidders_of(i)) {
      out.push_back({i, nb.index, nb.value});
    }
  }
  return out;
}

Instance validate_instance(int num_items, int num_bidders,
                           std::span<const Valuation> edges) {
  return Instance::FromEdges(num_items, num_bidders, edges);
}

Pricing::Pricing(std::vector<double> prices) : prices_(std::move(prices)) {
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    if (!(prices_[i] >= 0.0) || !std::isfinite(prices_[i])) {
      throw Error("price of item " + std::to_string(i) +
                  " must be finite and non-negative");
    }
  }
}

Pricing Pricing::Zero(int num_items) {
  return Pricing(std::vector<double>(static_cast<std::size_t>(num_items), 0.0));
}

int Allocation::num_served() const {
  return static_cast<int>(
      std::count_if(assignment_.begin(), assignment_.end(),
                    [](const std::optional<int>& a) { return a.has_value(); }));
}

DerivedConstants derive_constants(const Instance& inst) {
  DerivedConstants c;
  c.item_max.assign(static_cast<std::size_t>(inst.num_items()), 0.0);
  c.bidder_max.assign(static_cast<std::size_t>(inst.num_bidders()), 0.0);
  for (int i = 0; i < inst.num_items(); ++i) {
    for (const Neighbor& nb : inst.bidders_of(i)) {
      auto& r = c.item_max[static_cast<std::size_t>(i)];
      auto& s = c.bidder_max[static_cast<std::size_t>(nb.index)];
      r = std::max(r, nb.value);
      s = std::max(s, nb.value);
      c.global_max = std::max(c.global_max, nb.value);
    }
  }
  return c;
}

void check_dimensions(const Instance& inst, const Pricing& p) {
  if (p.size() != static_cast<std::size_t>(inst.num_items())) {
    throw IndexOutOfRangeError("pricing has " + std::to_string(p.size()) +
                               " entries but the instance has " +
                               std::to_string(inst.num_items()) + " items");
  }
}

double quantize_valuation(double v) { return std::round(v * 1e9) / 1e9; }

std::string to_string(const Pricing& p) {
  std::ostringstream out;
  out.precision(10);
  out << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out << ", ";
    out << p[i];
  }
  out << ')';
  return out.str();
}

}  // namespace efp
