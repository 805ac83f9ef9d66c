#include "pharos/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace pharos {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("PHAROS_LOG");
    if (env) {
      if (std::strcmp(env, "error") == 0) return LogLevel::Error;
      if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    }
    return LogLevel::Warn;
  }();
  return level;
}

namespace {
void emit(LogLevel at, const char* tag, const std::string& msg) {
  if (log_level() >= at) std::fprintf(stderr, "pharos: %s: %s\n", tag, msg.c_str());
}
}  // namespace

void log_error(const std::string& msg) { emit(LogLevel::Error, "error", msg); }
void log_warn(const std::string& msg) { emit(LogLevel::Warn, "warning", msg); }
void log_info(const std::string& msg) { emit(LogLevel::Info, "info", msg); }

}  // namespace pharos
