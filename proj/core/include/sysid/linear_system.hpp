#pragma once

#include "sysid/numerics.hpp"

namespace sysid {

// Discrete time-invariant model
//   x(k+1) = A x(k) + a + f(k),    r(k) = x(k) + w(k),    k >= 1,
// with process noise f, observation noise w, and constant offset a.
struct LinearSystem {
  Matrix A;  // n x n
  Vector a;  // n

  int n() const { return static_cast<int>(A.rows()); }

  // Throws ConfigError unless A is square, finite, and a has matching size.
  void validate() const;
};

}  // namespace sysid
