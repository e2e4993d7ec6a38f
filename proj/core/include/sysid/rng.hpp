#pragma once

#include <cstdint>

namespace sysid {

// Counter-based pseudo random stream.  Every Monte Carlo trial owns an
// independent stream derived from (master seed, stream id), so results do
// not depend on trial count, evaluation order, or thread count.
//
// The generator is SplitMix64.  It is deliberately self-contained: the
// <random> engines and distributions are implementation-defined across
// standard libraries, and the project guarantees bit-identical output for
// a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller; consumes exactly two raw draws.
  double gaussian(double mean, double stddev);

 private:
  std::uint64_t state_;
};

// Stream id for trial `trial` of sweep slot `slot` under `master`.
// Stable under changes to the number of trials or sweep values.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t slot,
                          std::uint64_t trial);

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  return derive_seed(master, 0, trial);
}

}  // namespace sysid
