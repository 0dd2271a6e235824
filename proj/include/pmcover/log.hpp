#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace pmc {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Controlled by PMCOVER_LOG in {error, info, debug}; default error.
inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("PMCOVER_LOG");
    if (env == nullptr) return LogLevel::Error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

inline void log_at(LogLevel lvl, const char* tag, const char* fmt, ...) {
  if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
  std::fprintf(stderr, "[%s] ", tag);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

#define PMC_LOG_ERROR(...) ::pmc::log_at(::pmc::LogLevel::Error, "error", __VA_ARGS__)
#define PMC_LOG_INFO(...) ::pmc::log_at(::pmc::LogLevel::Info, "info", __VA_ARGS__)
#define PMC_LOG_DEBUG(...) ::pmc::log_at(::pmc::LogLevel::Debug, "debug", __VA_ARGS__)

}  // namespace pmc
