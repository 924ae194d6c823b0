#pragma once

#include <stdexcept>
#include <string>

namespace qdarp {

// Bad user input: config files, CLI values, violated parameter invariants.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Refusal to produce numbers that would be garbage (grid too small,
// solver step too coarse, sweep budget exceeded mid-validation).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdarp
