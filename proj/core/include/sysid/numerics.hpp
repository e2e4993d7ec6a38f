#pragma once

#include <Eigen/Dense>

namespace sysid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Numeric rank by SVD.  A singular value counts as nonzero when it exceeds
// max(rows, cols) * eps * sigma_max.  The same rule is used everywhere a
// rank decision is made so that feasibility checks agree across modules.
int svd_rank(const Matrix& m);

// Largest singular value.
double spectral_norm(const Matrix& m);

// sigma_max / sigma_min; +inf when the smallest singular value is zero.
double condition_number(const Matrix& m);

// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue_sym(const Matrix& m);

// Inverse square root of a symmetric positive definite matrix via its
// eigendecomposition.  Throws NumericalError when the smallest eigenvalue
// falls below 1e-12 times the largest (a degenerate moment matrix).
Matrix inverse_sqrt_spd(const Matrix& m, const char* context);

// argmin_X || A X - B ||_F via column-pivoted QR.
Matrix lstsq(const Matrix& a, const Matrix& b);

}  // namespace sysid
