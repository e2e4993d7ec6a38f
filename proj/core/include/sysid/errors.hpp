#pragma once

#include <stdexcept>
#include <string>

namespace sysid {

// Raised for malformed inputs: bad JSON/CSV, inconsistent dimensions,
// out-of-range parameters.  The CLI maps this family to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation cannot proceed numerically: state overflow,
// degenerate moment matrices, domain violations in the bound formulas.
// The CLI maps this family to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sysid
