// Copyright 2026 The paramine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARAMINE_UTIL_LOG_HPP_
#define PARAMINE_UTIL_LOG_HPP_

#include <atomic>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace paramine {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kOff = 4 };

inline std::atomic<LogLevel> &MinLogLevel() {
  static std::atomic<LogLevel> level{LogLevel::kInfo};
  return level;
}

// Streams one line to stderr when destroyed.
class LogLine {
 public:
  explicit LogLine(LogLevel level) : level_(level) {}
  ~LogLine() {
    if (level_ < MinLogLevel().load()) return;
    static std::mutex mu;
    static const char *kNames[] = {"DEBUG", "INFO", "WARN", "ERROR", ""};
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "[" << kNames[static_cast<int>(level_)] << "] " << out_.str()
              << '\n';
  }
  template <typename T>
  LogLine &operator<<(const T &v) {
    out_ << v;
    return *this;
  }

 private:
  LogLevel level_;
  std::ostringstream out_;
};

#define PARAMINE_LOG(level) ::paramine::LogLine(::paramine::LogLevel::k##level)

}  // namespace paramine

#endif  // PARAMINE_UTIL_LOG_HPP_
