// SPDX-License-Identifier: Apache-2.0

#include "efp/formulations.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace efp {
namespace {

std::string Name(std::string_view prefix, int a) {
  return std::string(prefix) + "_" + std::to_string(a + 1);
}

std::string Name(std::string_view prefix, int a, int b) {
  return std::string(prefix) + "_" + std::to_string(a + 1) + "_" +
         std::to_string(b + 1);
}

}  // namespace

std::string_view to_string(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::kSTM:
      return "STM";
    case FormulationKind::kI:
      return "I";
    case FormulationKind::kL:
      return "L";
    case FormulationKind::kP:
      return "P";
    case FormulationKind::kU:
      return "U";
  }
  return "?";
}

FormulationKind parse_formulation(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (FormulationKind k : kAllFormulations) {
    if (upper == to_string(k)) return k;
  }
  throw Error("unknown formulation '" + std::string(name) + "'");
}

Formulation::Formulation(const Instance& inst, FormulationKind kind,
                         BuildOptions options)
    : kind_(kind),
      num_items_(inst.num_items()),
      num_bidders_(inst.num_bidders()) {
  DerivedConstants dc = derive_constants(inst);
  item_max_ = std::move(dc.item_max);
  bidder_max_ = std::move(dc.bidder_max);

  for (int i = 0; i < num_items_; ++i) {
    for (int b = 0; b < num_bidders_; ++b) model_.add_binary(Name("x", i, b));
  }
  for (int i = 0; i < num_items_; ++i) {
    const double upper = options.price_upper_bound
                             ? item_max_[static_cast<std::size_t>(i)]
                             : kInfinity;
    model_.add_variable(Name("p", i), 0.0, upper);
  }

  for (int b = 0; b < num_bidders_; ++b) {
    std::vector<Term> row;
    for (int i = 0; i < num_items_; ++i) row.push_back({x_var(i, b), 1.0});
    model_.add_constraint(Name("assign", b), std::move(row),
                          Relation::kLessEqual, 1.0);
  }

  switch (kind_) {
    case FormulationKind::kSTM:
    case FormulationKind::kI:
    case FormulationKind::kL:
      BuildPricePaid(inst);
      break;
    case FormulationKind::kP:
      BuildProfit(inst);
      break;
    case FormulationKind::kU:
      BuildUtility(inst);
      break;
  }
}

int Formulation::aux_var(int item, int bidder) const {
  const int base = num_items_ * num_bidders_ + num_items_;
  switch (kind_) {
    case FormulationKind::kP:
    case FormulationKind::kU:
      return base + bidder;
    default:
      return base + item * num_bidders_ + bidder;
  }
}

void Formulation::BuildPricePaid(const Instance& inst) {
  const int m = num_items_;
  const int n = num_bidders_;
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < n; ++b) model_.add_variable(Name("ph", i, b), 0.0, kInfinity);
  }

  std::vector<Term> objective;
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < n; ++b) objective.push_back({aux_var(i, b), 1.0});
  }
  model_.set_objective(std::move(objective));

  // STM: sum_{i != k} (v_ib x_ib - ph_ib) - v_kb sum_{i != k} x_ib + p_k >= 0
  // I/L: sum_i (v_ib x_ib - ph_ib) + p_k >= v_kb
  const bool all_items = kind_ != FormulationKind::kSTM;
  for (int k = 0; k < m; ++k) {
    for (int b = 0; b < n; ++b) {
      const double v_kb = inst.value(k, b);
      std::vector<Term> row;
      for (int i = 0; i < m; ++i) {
        if (i == k && !all_items) continue;
        const double v_ib = inst.value(i, b);
        row.push_back({x_var(i, b), all_items ? v_ib : v_ib - v_kb});
        row.push_back({aux_var(i, b), -1.0});
      }
      row.push_back({price_var(k), 1.0});
      model_.add_constraint(Name("envy", k, b), std::move(row),
                            Relation::kGreaterEqual, all_items ? v_kb : 0.0);
    }
  }

  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < n; ++b) {
      model_.add_constraint(
          Name("surplus", i, b),
          {{x_var(i, b), inst.value(i, b)}, {aux_var(i, b), -1.0}},
          Relation::kGreaterEqual, 0.0);
    }
  }

  if (kind_ != FormulationKind::kL) {
    for (int i = 0; i < m; ++i) {
      for (int b = 0; b < n; ++b) {
        model_.add_constraint(Name("ub_price", i, b),
                              {{aux_var(i, b), 1.0}, {price_var(i), -1.0}},
                              Relation::kLessEqual, 0.0);
      }
    }
  }

  // ph_ib >= p_i - R_i (1 - x_ib)
  for (int i = 0; i < m; ++i) {
    const double r = item_max_[static_cast<std::size_t>(i)];
    for (int b = 0; b < n; ++b) {
      model_.add_constraint(
          Name("lb_price", i, b),
          {{aux_var(i, b), 1.0}, {price_var(i), -1.0}, {x_var(i, b), -r}},
          Relation::kGreaterEqual, -r);
    }
  }
}

void Formulation::BuildProfit(const Instance& inst) {
  const int m = num_items_;
  const int n = num_bidders_;
  for (int b = 0; b < n; ++b) model_.add_variable(Name("z", b), 0.0, kInfinity);

  std::vector<Term> objective;
  for (int b = 0; b < n; ++b) objective.push_back({aux_var(0, b), 1.0});
  model_.set_objective(std::move(objective));

  auto surplus_terms = [&](int b) {
    std::vector<Term> row;
    for (int i = 0; i < m; ++i) row.push_back({x_var(i, b), inst.value(i, b)});
    row.push_back({aux_var(0, b), -1.0});
    return row;
  };

  // sum_i v_ib x_ib - z_b + p_k >= v_kb
  for (int k = 0; k < m; ++k) {
    for (int b = 0; b < n; ++b) {
      std::vector<Term> row = surplus_terms(b);
      row.push_back({price_var(k), 1.0});
      model_.add_constraint(Name("envy", k, b), std::move(row),
                            Relation::kGreaterEqual, inst.value(k, b));
    }
  }
  for (int b = 0; b < n; ++b) {
    model_.add_constraint(Name("surplus", b), surplus_terms(b),
                          Relation::kGreaterEqual, 0.0);
  }
  // z_b >= p_i - R_i (1 - x_ib)
  for (int i = 0; i < m; ++i) {
    const double r = item_max_[static_cast<std::size_t>(i)];
    for (int b = 0; b < n; ++b) {
      model_.add_constraint(
          Name("lb_profit", i, b),
          {{aux_var(i, b), 1.0}, {price_var(i), -1.0}, {x_var(i, b), -r}},
          Relation::kGreaterEqual, -r);
    }
  }
}

void Formulation::BuildUtility(const Instance& inst) {
  const int m = num_items_;
  const int n = num_bidders_;
  for (int b = 0; b < n; ++b) model_.add_variable(Name("u", b), 0.0, kInfinity);

  std::vector<Term> objective;
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < n; ++b) {
      objective.push_back({x_var(i, b), inst.value(i, b)});
    }
  }
  for (int b = 0; b < n; ++b) objective.push_back({aux_var(0, b), -1.0});
  model_.set_objective(std::move(objective));

  // u_b + p_i >= v_ib
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < n; ++b) {
      model_.add_constraint(Name("util_lb", i, b),
                            {{aux_var(i, b), 1.0}, {price_var(i), 1.0}},
                            Relation::kGreaterEqual, inst.value(i, b));
    }
  }
  // u_b <= v_ib x_ib - p_i + (1 - x_ib)(R_i + S_b)
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < n; ++b) {
      const double big_m = item_max_[static_cast<std::size_t>(i)] +
                           bidder_max_[static_cast<std::size_t>(b)];
      model_.add_constraint(Name("util_ub", i, b),
                            {{aux_var(i, b), 1.0},
                             {price_var(i), 1.0},
                             {x_var(i, b), big_m - inst.value(i, b)}},
                            Relation::kLessEqual, big_m);
    }
  }
  // u_b <= sum_i v_ib x_ib
  for (int b = 0; b < n; ++b) {
    std::vector<Term> row;
    for (int i = 0; i < m; ++i) row.push_back({x_var(i, b), -inst.value(i, b)});
    row.push_back({aux_var(0, b), 1.0});
    model_.add_constraint(Name("util_cap", b), std::move(row),
                          Relation::kLessEqual, 0.0);
  }
}

Outcome extract_outcome(const Instance& inst, const Formulation& f,
                        std::span<const double> values, double tolerance) {
  const MipModel& model = f.model();
  const FeasibilityReport report = check_feasibility(model, values);
  if (!report.feasible(tolerance, /*check_integrality=*/true)) {
    throw InfeasibleAssignmentError(
        "assignment violates the " + std::string(to_string(f.kind())) +
        " model (bounds " + std::to_string(report.max_bound_violation) +
        ", rows " + std::to_string(report.max_row_violation) +
        (report.worst_row.empty() ? "" : " at " + report.worst_row) +
        ", integrality " + std::to_string(report.max_integrality_violation) +
        ")");
  }

  std::vector<double> prices(static_cast<std::size_t>(f.num_items()));
  for (int i = 0; i < f.num_items(); ++i) {
    prices[static_cast<std::size_t>(i)] =
        std::max(0.0, values[static_cast<std::size_t>(f.price_var(i))]);
  }
  Allocation x(f.num_bidders());
  for (int b = 0; b < f.num_bidders(); ++b) {
    for (int i = 0; i < f.num_items(); ++i) {
      if (values[static_cast<std::size_t>(f.x_var(i, b))] > 0.5) x.assign(b, i);
    }
  }
  Outcome out = make_outcome(inst, Pricing(std::move(prices)), std::move(x));
  const double objective = model.evaluate_objective(values);
  if (std::abs(objective - out.profit) > tolerance * std::max(1.0, std::abs(objective))) {
    throw InfeasibleAssignmentError(
        "objective " + std::to_string(objective) +
        " differs from the recomputed profit " + std::to_string(out.profit));
  }
  return out;
}

std::vector<double> embed_outcome(const Instance& inst, const Formulation& f,
                                  const Outcome& outcome) {
  const int m = f.num_items();
  const int n = f.num_bidders();
  std::vector<double> values(static_cast<std::size_t>(f.model().num_variables()),
                             0.0);
  for (int i = 0; i < m; ++i) {
    values[static_cast<std::size_t>(f.price_var(i))] =
        std::min(outcome.pricing[static_cast<std::size_t>(i)],
                 f.item_max()[static_cast<std::size_t>(i)]);
  }
  for (int b = 0; b < n; ++b) {
    const auto item = outcome.allocation.item_of(b);
    if (item) values[static_cast<std::size_t>(f.x_var(*item, b))] = 1.0;
    const double paid = item ? values[static_cast<std::size_t>(f.price_var(*item))] : 0.0;
    switch (f.kind()) {
      case FormulationKind::kSTM:
      case FormulationKind::kI:
      case FormulationKind::kL:
        if (item) values[static_cast<std::size_t>(f.aux_var(*item, b))] = paid;
        break;
      case FormulationKind::kP:
        values[static_cast<std::size_t>(f.aux_var(0, b))] = paid;
        break;
      case FormulationKind::kU:
        values[static_cast<std::size_t>(f.aux_var(0, b))] =
            item ? std::max(0.0, inst.value(*item, b) - paid) : 0.0;
        break;
    }
  }
  return values;
}

}  // namespace efp
