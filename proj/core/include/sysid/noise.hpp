#pragma once

#include <optional>
#include <string>

#include "sysid/rng.hpp"

namespace sysid {

enum class DistKind { Uniform, Gaussian, Constant };

// Scalar distribution applied independently to each vector coordinate.
struct DistributionSpec {
  DistKind kind = DistKind::Constant;
  double lo = 0.0;      // uniform
  double hi = 0.0;      // uniform
  double mean = 0.0;    // gaussian
  double stddev = 0.0;  // gaussian
  double value = 0.0;   // constant

  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec gaussian(double mean, double stddev);
  static DistributionSpec constant(double value);

  double sample(Rng& rng) const;
  double mean_value() const;
  double variance() const;

  // Throws ConfigError on inverted uniform ranges or negative stddev.
  void validate(const std::string& label) const;
};

// Noise configuration for one simulated trajectory. Coordinates are drawn
// independently from the per-source scalar distribution.
//
// When `offset` is set, the constant a is redrawn from it for each trajectory
// and the system's own a is ignored; otherwise a is the system's fixed vector.
struct NoiseModel {
  DistributionSpec process;      // f(k)
  DistributionSpec observation;  // w(k)
  DistributionSpec initial;      // x(1)
  std::optional<DistributionSpec> offset;

  void validate() const;
};

}  // namespace sysid
