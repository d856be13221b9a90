// SPDX-License-Identifier: Apache-2.0
//
// Diagnostics on stderr. EFP_LOG selects the level: error (default), info or
// debug.

#ifndef EFP_LOG_H_
#define EFP_LOG_H_

#include <sstream>
#include <string>

namespace efp {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level();
void set_log_level(LogLevel level);
void log_message(LogLevel level, const std::string& text);

}  // namespace efp

#define EFP_LOG(level, expr)                                   \
  do {                                                         \
    if (static_cast<int>(::efp::LogLevel::level) <=            \
        static_cast<int>(::efp::log_level())) {                \
      std::ostringstream efp_log_stream_;                      \
      efp_log_stream_ << expr;                                 \
      ::efp::log_message(::efp::LogLevel::level,               \
                         efp_log_stream_.str());               \
    }                                                          \
  } while (false)

#endif  // EFP_LOG_H_
