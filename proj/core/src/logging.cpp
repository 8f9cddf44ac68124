#include "corpusforge/logging.hpp"

#include <cstdlib>
#include <mutex>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace corpusforge {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> instance;
  std::call_once(once, [] {
    instance = spdlog::stderr_logger_mt("corpusforge");
    instance->set_pattern("[%l] %v");
    instance->set_level(spdlog::level::info);
  });
  return instance;
}

spdlog::level::level_enum to_spdlog(LogLevel level) {
  switch (level) {
    case LogLevel::kError: return spdlog::level::err;
    case LogLevel::kWarn: return spdlog::level::warn;
    case LogLevel::kInfo: return spdlog::level::info;
    case LogLevel::kDebug: return spdlog::level::debug;
  }
  return spdlog::level::info;
}

}  // namespace

LogLevel parse_log_level(std::string_view name) {
  if (name == "error") return LogLevel::kError;
  if (name == "warn") return LogLevel::kWarn;
  if (name == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

void init_logging_from_env() {
  const char* env = std::getenv("CORPUSFORGE_LOG");
  set_log_level(env ? parse_log_level(env) : LogLevel::kInfo);
}

void set_log_level(LogLevel level) { logger()->set_level(to_spdlog(level)); }

void log_error(std::string_view message) { logger()->error("{}", message); }
void log_warn(std::string_view message) { logger()->warn("{}", message); }
void log_info(std::string_view message) { logger()->info("{}", message); }
void log_debug(std::string_view message) { logger()->debug("{}", message); }

}  // namespace corpusforge
