// SPDX-License-Identifier: Apache-2.0

#include "efp/log.h"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace efp {
namespace {

LogLevel FromEnvironment() {
  const char* env = std::getenv("EFP_LOG");
  if (env == nullptr) return LogLevel::kError;
  const std::string_view value(env);
  if (value == "debug") return LogLevel::kDebug;
  if (value == "info") return LogLevel::kInfo;
  return LogLevel::kError;
}

std::atomic<int>& Level() {
  static std::atomic<int> level{static_cast<int>(FromEnvironment())};
  return level;
}

std::mutex& SinkMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(Level().load()); }

void set_log_level(LogLevel level) { Level().store(static_cast<int>(level)); }

void log_message(LogLevel level, const std::string& text) {
  static constexpr std::string_view kTags[] = {"error", "info", "debug"};
  std::lock_guard<std::mutex> lock(SinkMutex());
  std::cerr << "[" << kTags[static_cast<int>(level)] << "] " << text << '\n';
}

}  // namespace efp
