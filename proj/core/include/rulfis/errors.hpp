#pragma once

#include <stdexcept>
#include <string>

namespace rulfis {

/// Invalid argument values or data that violates an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inconsistent or unknown configuration (feature names, filter settings, schemas).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dataset files that cannot be parsed. The message names the file and line.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Routes non-fatal diagnostics (clamps, dropped rows, pass-through filters)
// to the library logger.
void warn(const std::string& message);

}  // namespace rulfis
