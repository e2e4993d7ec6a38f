#pragma once

#include "sysid/index_family.hpp"
#include "sysid/noise.hpp"
#include "sysid/numerics.hpp"

namespace sysid {

// Per-coordinate variances of the four disturbance sources. The moment
// formulas treat every source as zero-mean and the offset as redrawn
// independently at each step, so they are exact when the offset variance is
// zero and approximate otherwise.
struct NoiseVariances {
  double initial = 0.0;      // x(1)
  double process = 0.0;      // f(k)
  double observation = 0.0;  // w(k)
  double offset = 0.0;       // a
};

NoiseVariances variances(const NoiseModel& noise);

// E[(r(k) - r(m)) (r(k) - r(m))^T] for k < m, assembled as the direct
// power-sum part minus the two cross-term corrections whose index ranges
// split on the sign of 2k - m.
Matrix expected_diff_moment(const Matrix& a_matrix, const NoiseVariances& var, int k,
                            int m);

struct MomentSet {
  Matrix gamma;         // sum of expected_diff_moment over the family's tags
  Matrix whitener;      // gamma^{-1/2}
  double whitener_norm; // spectral norm of the whitener; the block-diagonal
                        // lift across tags has the same norm
};

// Throws NumericalError when gamma is numerically singular.
MomentSet gamma_and_whitener(const Matrix& a_matrix, const NoiseVariances& var,
                             const IndexFamily& family);

}  // namespace sysid
