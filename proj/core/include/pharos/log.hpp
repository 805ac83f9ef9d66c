#pragma once

#include <string>

namespace pharos {

/// Stderr verbosity, selected once per process via PHAROS_LOG={error|warn|info}.
/// Unset or unrecognized values mean Warn. Data output never goes through here.
enum class LogLevel { Error = 0, Warn = 1, Info = 2 };

LogLevel log_level();
void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);

}  // namespace pharos
