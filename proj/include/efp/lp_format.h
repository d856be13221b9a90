// SPDX-License-Identifier: Apache-2.0
//
// CPLEX-style LP text: Maximize/Minimize, Subject To, Bounds, Binaries,
// Generals, End. The writer emits constraints in declaration order with
// coefficients printed to 12 significant digits. The reader accepts the
// subset of the format the writer produces plus the usual bound forms
// (l <= x <= u, x <= u, x >= l, x = v). "x free" parses but is rejected, as
// models need finite lower bounds.

#ifndef EFP_LP_FORMAT_H_
#define EFP_LP_FORMAT_H_

#include <string>
#include <string_view>

#include "efp/model.h"

namespace efp {

class LpParseError : public Error {
 public:
  LpParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

std::string export_lp_text(const MipModel& model);

MipModel parse_lp_text(std::string_view text);

}  // namespace efp

#endif  // EFP_LP_FORMAT_H_
