#include "sysid/linear_system.hpp"

#include "sysid/errors.hpp"

namespace sysid {

void LinearSystem::validate() const {
  if (A.rows() == 0 || A.rows() != A.cols()) {
    throw ConfigError("system matrix must be square and non-empty, got " +
                      std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
  if (a.size() != A.rows()) {
    throw ConfigError("offset size " + std::to_string(a.size()) +
                      " does not match state dimension " + std::to_string(A.rows()));
  }
  if (!A.allFinite() || !a.allFinite()) {
    throw ConfigError("system contains non-finite entries");
  }
}

}  // namespace sysid
