#include "qgs/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <mutex>

namespace qgs::log {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> instance;
  std::call_once(once, [] {
    instance = spdlog::stderr_color_mt("qgs");
    instance->set_pattern("[%l] %v");
    instance->set_level(spdlog::level::warn);
  });
  return instance;
}

}  // namespace

void init() {
  auto l = logger();
  if (const char* env = std::getenv("QGS_LOG"); env && *env)
    l->set_level(spdlog::level::from_str(env));
}

void debug(const std::string& message) { logger()->debug(message); }
void info(const std::string& message) { logger()->info(message); }
void warn(const std::string& message) { logger()->warn(message); }
void error(const std::string& message) { logger()->error(message); }

}  // namespace qgs::log
