#pragma once

#include <string_view>

namespace seconet::log {

// Verbosity comes from the SECONET_LOG environment variable
// (trace, debug, info, warn, error, off; default warn). Output goes to stderr.
void init_from_env();

void debug(std::string_view msg);
void info(std::string_view msg);
void warn(std::string_view msg);
void error(std::string_view msg);

}  // namespace seconet::log
