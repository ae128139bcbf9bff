#ifndef STRMON_TOOLS_LOG_HPP
#define STRMON_TOOLS_LOG_HPP

#include <cstdlib>
#include <iostream>
#include <string>

namespace strmon::cli {

enum class LogLevel { Off = 0, Error = 1, Info = 2, Debug = 3 };

/// Level from the STR_LOG environment variable (off|error|info|debug);
/// defaults to error.
inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("STR_LOG");
    if (!env) return LogLevel::Error;
    const std::string v(env);
    if (v == "off") return LogLevel::Off;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Error;
  }();
  return level;
}

inline void log_error(const std::string& msg) {
  if (log_level() >= LogLevel::Error) std::cerr << "error: " << msg << "\n";
}

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "info: " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "debug: " << msg << "\n";
}

}  // namespace strmon::cli

#endif  // STRMON_TOOLS_LOG_HPP
