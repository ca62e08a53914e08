#ifndef QGS_LOG_HPP_
#define QGS_LOG_HPP_

#include <string>

namespace qgs::log {

/// Configures the stderr logger from QGS_LOG (trace, debug, info, warn, error,
/// off). Defaults to warn. Safe to call more than once.
void init();

void debug(const std::string& message);
void info(const std::string& message);
void warn(const std::string& message);
void error(const std::string& message);

}  // namespace qgs::log

#endif  // QGS_LOG_HPP_
