// SPDX-License-Identifier: Apache-2.0
//
// MIP formulations of the unit-demand envy-free pricing problem.
//
// All five share the binary assignment x_ib and the prices p_i:
//
//   STM  price paid p^_ib, envy rows summed over the other items
//   I    STM with envy rows summed over all items
//   L    I without the rows p^_ib <= p_i
//   P    per-bidder profit z_b instead of p^_ib
//   U    per-bidder utility u_b; objective sum v x - sum u
//
// Big-M constants are R_i (largest valuation of item i) and R_i + S_b.
// Variable names are x_i_b, p_i, ph_i_b, z_b and u_b with 1-based indices.

#ifndef EFP_FORMULATIONS_H_
#define EFP_FORMULATIONS_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "efp/allocation.h"
#include "efp/core.h"
#include "efp/model.h"

namespace efp {

enum class FormulationKind { kSTM, kI, kL, kP, kU };

inline constexpr std::array<FormulationKind, 5> kAllFormulations = {
    FormulationKind::kSTM, FormulationKind::kI, FormulationKind::kL,
    FormulationKind::kP, FormulationKind::kU};

std::string_view to_string(FormulationKind kind);
// Case-insensitive "STM", "I", "L", "P" or "U".
FormulationKind parse_formulation(std::string_view name);

struct BuildOptions {
  // Bound every p_i by R_i. Pricing an item above R_i sells nothing, so this
  // cuts no optimal outcome; disable to get the formulations verbatim.
  bool price_upper_bound = true;
};

class InfeasibleAssignmentError : public Error {
 public:
  using Error::Error;
};

class Formulation {
 public:
  Formulation(const Instance& inst, FormulationKind kind,
              BuildOptions options = {});

  FormulationKind kind() const { return kind_; }
  const MipModel& model() const { return model_; }
  int num_items() const { return num_items_; }
  int num_bidders() const { return num_bidders_; }

  int x_var(int item, int bidder) const {
    return item * num_bidders_ + bidder;
  }
  int price_var(int item) const { return num_items_ * num_bidders_ + item; }
  // ph_i_b for STM/I/L, z_b for P, u_b for U. The item is ignored for P and U.
  int aux_var(int item, int bidder) const;

  std::span<const double> item_max() const { return item_max_; }
  std::span<const double> bidder_max() const { return bidder_max_; }

 private:
  void BuildPricePaid(const Instance& inst);
  void BuildProfit(const Instance& inst);
  void BuildUtility(const Instance& inst);

  FormulationKind kind_;
  int num_items_;
  int num_bidders_;
  std::vector<double> item_max_;
  std::vector<double> bidder_max_;
  MipModel model_;
};

inline Formulation build(const Instance& inst, FormulationKind kind,
                         BuildOptions options = {}) {
  return Formulation(inst, kind, options);
}

// Reads (p, x) from a solution of the formulation. The point must satisfy every
// row, bound and integrality requirement within tolerance, and its objective
// must equal the recomputed profit; otherwise InfeasibleAssignmentError.
Outcome extract_outcome(const Instance& inst, const Formulation& f,
                        std::span<const double> values,
                        double tolerance = 1e-6);

// Integral point of the formulation that represents an envy-free outcome.
// Prices of unsold items are clamped to R_i so the big-M rows hold. Its
// objective equals outcome.profit.
std::vector<double> embed_outcome(const Instance& inst, const Formulation& f,
                                  const Outcome& outcome);

}  // namespace efp

#endif  // EFP_FORMULATIONS_H_
