#pragma once

#include <stdexcept>
#include <string>

namespace cosmos {

// Base for everything the pipeline throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user configuration (unknown keys, invalid values). Maps to exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// File system / format problems (missing file, malformed header, ...).
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// A caller violated a documented precondition.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

// Degenerate numeric input (constant volume fed to a normalizer, ...).
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

}  // namespace cosmos
