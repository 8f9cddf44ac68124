#ifndef CORPUSFORGE_LOGGING_HPP_
#define CORPUSFORGE_LOGGING_HPP_

#include <string_view>

namespace corpusforge {

enum class LogLevel { kError, kWarn, kInfo, kDebug };

// Parses "error" | "warn" | "info" | "debug"; anything else yields kInfo.
LogLevel parse_log_level(std::string_view name);

// Installs a stderr logger at the level named by CORPUSFORGE_LOG
// (default "info"). Safe to call more than once.
void init_logging_from_env();

void set_log_level(LogLevel level);

void log_error(std::string_view message);
void log_warn(std::string_view message);
void log_info(std::string_view message);
void log_debug(std::string_view message);

}  // namespace corpusforge

#endif  // CORPUSFORGE_LOGGING_HPP_
