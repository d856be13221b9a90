// SPDX-License-Identifier: Apache-2.0

#include "efp/branch_and_bound.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <queue>
#include <vector>

namespace efp {
namespace {

using Clock = std::chrono::steady_clock;

struct Fixing {
  int var;
  double value;
};

struct Node {
  double bound = 0.0;
  int depth = 0;
  long id = 0;
  std::vector<Fixing> fixings;
};

// Max-heap on bound; deeper and then older nodes first among equal bounds.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Most fractional integer variable; ties go to the larger LP value, then the
// lower index. -1 if the point is integral.
int ChooseBranchVariable(const MipModel& model, std::span<const double> x,
                         double tolerance) {
  int best = -1;
  double best_frac = tolerance;
  double best_value = 0.0;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (!model.variable(j).integer) continue;
    const double v = x[static_cast<std::size_t>(j)];
    const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
    if (frac <= tolerance) continue;
    const bool better =
        frac > best_frac + 1e-12 ||
        (std::abs(frac - best_frac) <= 1e-12 && best >= 0 && v > best_value + 1e-12);
    if (best < 0 || better) {
      best = j;
      best_frac = frac;
      best_value = v;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kFeasible:
      return "feasible";
    case MipStatus::kInfeasible:
      return "infeasible";
  }
  return "?";
}

double relative_gap(double bound, double incumbent) {
  return std::max(0.0, bound - incumbent) / std::max(1.0, std::abs(incumbent));
}

Outcome primal_heuristic(const Instance& inst, const Formulation& f,
                         const LpSolution& lp) {
  std::vector<double> prices(static_cast<std::size_t>(f.num_items()));
  for (int i = 0; i < f.num_items(); ++i) {
    prices[static_cast<std::size_t>(i)] =
        std::max(0.0, lp.values.at(static_cast<std::size_t>(f.price_var(i))));
  }
  return envy_free_allocation(inst, Pricing(std::move(prices)));
}

MipResult solve_mip(const Instance& inst, const Formulation& f,
                    const MipLimits& limits) {
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(std::max(0.0, limits.time_seconds)));
  const MipModel& model = f.model();
  const auto num_vars = static_cast<std::size_t>(model.num_variables());

  MipResult result;

  // Starting incumbent: every item priced at its highest valuation.
  {
    std::vector<double> prices(f.item_max().begin(), f.item_max().end());
    result.incumbent = envy_free_allocation(inst, Pricing(std::move(prices)));
    result.incumbent_value = result.incumbent.profit;
  }
  auto offer = [&](Outcome candidate) {
    if (candidate.profit > result.incumbent_value) {
      result.incumbent_value = candidate.profit;
      result.incumbent = std::move(candidate);
    }
  };
  auto prunable = [&](double bound) {
    return relative_gap(bound, result.incumbent_value) <= limits.gap_tolerance;
  };

  // No envy-free outcome earns more than every bidder paying its top valuation.
  double trivial_bound = 0.0;
  for (double s : f.bidder_max()) trivial_bound += s;

  std::vector<double> root_lower(num_vars), root_upper(num_vars);
  for (std::size_t j = 0; j < num_vars; ++j) {
    root_lower[j] = model.variable(static_cast<int>(j)).lower;
    root_upper[j] = model.variable(static_cast<int>(j)).upper;
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::optional<Node> dive;
  long next_id = 0;
  open.push(Node{trivial_bound, 0, next_id++, {}});

  LpOptions lp_options;
  lp_options.deadline = deadline;
  std::vector<double> lower(num_vars), upper(num_vars);
  bool stopped = false;
  std::optional<double> interrupted_bound;

  while (dive || !open.empty()) {
    if (result.nodes >= limits.max_nodes || Clock::now() >= deadline) {
      stopped = true;
      break;
    }
    Node node;
    if (dive) {
      node = std::move(*dive);
      dive.reset();
    } else {
      node = open.top();
      open.pop();
    }
    if (prunable(node.bound)) continue;

    lower = root_lower;
    upper = root_upper;
    for (const Fixing& fx : node.fixings) {
      lower[static_cast<std::size_t>(fx.var)] = fx.value;
      upper[static_cast<std::size_t>(fx.var)] = fx.value;
    }
    const auto lp_start = Clock::now();
    const LpSolution lp = solve_lp(model, lower, upper, lp_options);
    result.lp_iterations += lp.iterations;
    if (node.id == 0) {
      result.root_relaxation_seconds = Seconds(lp_start);
      if (lp.optimal()) result.root_relaxation = lp.objective;
    }
    if (lp.status == LpStatus::kTimeLimit || lp.status == LpStatus::kIterationLimit) {
      interrupted_bound = node.bound;
      stopped = true;
      break;
    }
    ++result.nodes;
    if (!lp.optimal()) continue;  // infeasible subtree

    offer(primal_heuristic(inst, f, lp));
    // The LP value can exceed the parent's only through round-off.
    const double bound = std::min(lp.objective, node.bound);
    if (prunable(bound)) continue;

    const int branch = ChooseBranchVariable(model, lp.values, limits.integrality_tolerance);
    if (branch < 0) {
      // Integral LP point; x_p for its prices is at least as good, so the
      // heuristic above already covered it. Keep the point itself too.
      try {
        offer(extract_outcome(inst, f, lp.values));
      } catch (const InfeasibleAssignmentError&) {
      }
      continue;
    }

    Node down{bound, node.depth + 1, next_id++, node.fixings};
    down.fixings.push_back({branch, 0.0});
    Node up{bound, node.depth + 1, next_id++, std::move(node.fixings)};
    up.fixings.push_back({branch, 1.0});
    if (open.size() >= limits.max_open_nodes) {
      open.push(std::move(down));
      dive = std::move(up);
    } else {
      open.push(std::move(down));
      open.push(std::move(up));
    }
  }

  double bound = result.incumbent_value;
  if (stopped) {
    if (interrupted_bound) bound = std::max(bound, *interrupted_bound);
    if (dive) bound = std::max(bound, dive->bound);
    if (!open.empty()) bound = std::max(bound, open.top().bound);
  }
  result.best_bound = bound;
  result.gap = relative_gap(bound, result.incumbent_value);
  result.status = result.gap <= limits.gap_tolerance ? MipStatus::kOptimal
                                                     : MipStatus::kFeasible;
  result.wall_seconds = Seconds(start);
  return result;
}

}  // namespace efp
