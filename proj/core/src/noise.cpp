#include "sysid/noise.hpp"

#include "sysid/errors.hpp"

namespace sysid {

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  DistributionSpec d;
  d.kind = DistKind::Uniform;
  d.lo = lo;
  d.hi = hi;
  return d;
}

DistributionSpec DistributionSpec::gaussian(double mean, double stddev) {
  DistributionSpec d;
  d.kind = DistKind::Gaussian;
  d.mean = mean;
  d.stddev = stddev;
  return d;
}

DistributionSpec DistributionSpec::constant(double value) {
  DistributionSpec d;
  d.kind = DistKind::Constant;
  d.value = value;
  return d;
}

double DistributionSpec::sample(Rng& rng) const {
  switch (kind) {
    case DistKind::Uniform:
      return rng.uniform(lo, hi);
    case DistKind::Gaussian:
      return rng.gaussian(mean, stddev);
    case DistKind::Constant:
      return value;
  }
  return value;
}

double DistributionSpec::mean_value() const {
  switch (kind) {
    case DistKind::Uniform:
      return 0.5 * (lo + hi);
    case DistKind::Gaussian:
      return mean;
    case DistKind::Constant:
      return value;
  }
  return value;
}

double DistributionSpec::variance() const {
  switch (kind) {
    case DistKind::Uniform:
      return (hi - lo) * (hi - lo) / 12.0;
    case DistKind::Gaussian:
      return stddev * stddev;
    case DistKind::Constant:
      return 0.0;
  }
  return 0.0;
}

void DistributionSpec::validate(const std::string& label) const {
  if (kind == DistKind::Uniform && lo > hi) {
    throw ConfigError(label + ": uniform range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] is inverted");
  }
  if (kind == DistKind::Gaussian && stddev < 0.0) {
    throw ConfigError(label + ": gaussian stddev must be nonnegative");
  }
}

void NoiseModel::validate() const {
  process.validate("process noise");
  observation.validate("observation noise");
  initial.validate("initial state");
  if (offset) offset->validate("offset");
}

}  // namespace sysid
