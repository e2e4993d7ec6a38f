#pragma once

#include "sysid/eta.hpp"
#include "sysid/index_family.hpp"

namespace sysid {

// Linear map from the stacked disturbance vector to the stacked differences:
// row block for tag (m, q) carries A^{m-1} - A^{q-1} on its Initial block, I
// on its ObsDiff block, A^s on its ProcDiff block for offset s, and
// -A^{q-1-t} on the ProcOffset block holding f(t) + a. Each tag touches only
// its own blocks, so the map is block-diagonal by tag within every segment.
Matrix build_pi(const Matrix& a_matrix, const IndexFamily& family);

// Stacked differences r(m) - r(q) in tag order; equals build_pi * build_eta.
Vector stacked_differences(const Trajectory& traj, const IndexFamily& family);

// Spectral norm of the whitened map (I kron M) Pi. Tag-block-diagonality
// makes this the max over tags of sqrt(lambda_max(M G M)) with G the tag's
// row Gram; exact, no iteration.
double pi_upsilon_norm(const Matrix& a_matrix, const Matrix& whitener,
                       const IndexFamily& family);

}  // namespace sysid
