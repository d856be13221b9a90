// SPDX-License-Identifier: Apache-2.0
//
// The efp command line. Exit codes: 0 success, 1 usage or input error,
// 2 internal invariant violated.

#ifndef EFP_TOOLS_CLI_H_
#define EFP_TOOLS_CLI_H_

#include <iosfwd>

namespace efp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace efp

#endif  // EFP_TOOLS_CLI_H_
