#include "sysid/rng.hpp"

#include <cmath>
#include <numbers>

namespace sysid {
namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double Rng::gaussian(double mean, double stddev) {
  // u1 in (0, 1] so the logarithm is finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t slot,
                          std::uint64_t trial) {
  std::uint64_t x = master;
  std::uint64_t h = splitmix64(x);
  x = h ^ (0xD1B54A32D192ED03ULL + slot * 0x9E3779B97F4A7C15ULL);
  h = splitmix64(x);
  x = h ^ (0xEB44ACCAB455D165ULL + trial * 0xC2B2AE3D27D4EB4FULL);
  return splitmix64(x);
}

}  // namespace sysid
