#pragma once

#include <cmath>

namespace sysid {

// Concentration constants entering the sample-complexity machinery. The
// defaults are the worked example's values; gamma, kappa, and c_universal are
// properties of the noise classes and normally move together.
struct ComplexityConfig {
  double rho3 = 0.5;                     // moment-concentration radius, (0, 1)
  double eps = 0.25;                     // net resolution, [0, 1/2)
  double gamma = 0.0833;                 // sub-gaussian scale of the bias terms
  double kappa = 2.2 * std::sqrt(2.0);   // convex concentration constant
  double c_universal = 9.5;              // universal constant in the tail bounds

  // Throws ConfigError when a field leaves its domain.
  void validate() const;
};

}  // namespace sysid
