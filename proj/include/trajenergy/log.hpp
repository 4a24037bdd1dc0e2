// Copyright 2026 The trajenergy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace trajenergy {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

/// Verbosity taken from TRAJ_ENERGY_LOG ({error|info|debug}); defaults to
/// error. Read once per process.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("TRAJ_ENERGY_LOG");
    if (env == nullptr) return LogLevel::kError;
    const std::string value(env);
    if (value == "debug") return LogLevel::kDebug;
    if (value == "info") return LogLevel::kInfo;
    return LogLevel::kError;
  }();
  return level;
}

inline void log_message(LogLevel at, const char* tag, const std::string& msg) {
  if (static_cast<int>(at) <= static_cast<int>(log_level())) {
    std::cerr << "[trajenergy][" << tag << "] " << msg << '\n';
  }
}

inline void log_error(const std::string& msg) {
  log_message(LogLevel::kError, "error", msg);
}

inline void log_info(const std::string& msg) {
  log_message(LogLevel::kInfo, "info", msg);
}

// Warnings are advisory; they surface at info verbosity.
inline void log_warn(const std::string& msg) {
  log_message(LogLevel::kInfo, "warn", msg);
}

inline void log_debug(const std::string& msg) {
  log_message(LogLevel::kDebug, "debug", msg);
}

}  // namespace trajenergy
