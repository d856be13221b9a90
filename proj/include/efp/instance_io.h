// SPDX-License-Identifier: Apache-2.0
//
// Instance text format, version 1:
//
//   EFP 1
//   items <m>
//   bidders <n>
//   edge <i> <b> <v>        one line per stored valuation, 1-based indices
//
// Valuations are printed with at most 9 fractional digits (trailing zeros
// dropped). Lines end with '\n', fields are separated by one space.

#ifndef EFP_INSTANCE_IO_H_
#define EFP_INSTANCE_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>

#include "efp/core.h"

namespace efp {

class FormatError : public Error {
 public:
  FormatError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

std::string format_valuation(double v);

std::string serialize_instance(const Instance& inst);
// Throws FormatError on malformed text and the core validation errors on bad
// content.
Instance parse_instance(std::string_view text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

}  // namespace efp

#endif  // EFP_INSTANCE_IO_H_
