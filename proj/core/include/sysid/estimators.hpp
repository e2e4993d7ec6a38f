#pragma once

#include "sysid/index_family.hpp"
#include "sysid/linear_system.hpp"
#include "sysid/trajectory.hpp"

namespace sysid {

struct InferenceResult {
  Matrix A;       // n x n estimate; zero when infeasible
  Vector a;       // n offset estimate; zero for raw_ols and when infeasible
  bool feasible = false;
  int rank = 0;   // numeric rank of the deciding data matrix
};

// Difference-based estimator: least squares fit of the shifted difference
// columns onto the base difference columns, feasible iff the base columns
// span R^n. The offset estimate averages r(m+1) - A r(m) over m in
// [k, max_q], the steps the differenced data actually covers.
InferenceResult proposed_infer(const Trajectory& traj, const IndexFamily& family);

// Plain least squares of r(m+1) on [r(m); 1] for m in [k, p-1], feasible iff
// the regressor rows span R^{n+1}.
InferenceResult naive_infer(const Trajectory& traj, int k, int p);

// Least squares of r(m+1) on r(m) alone (no offset term), m in [k, p-1].
InferenceResult raw_ols_infer(const Trajectory& traj, int k, int p);

// Gram matrix P of the base columns, cross matrix Q of shifted against base.
Matrix gram_p(const Trajectory& traj, const IndexFamily& family);
Matrix cross_q(const Trajectory& traj, const IndexFamily& family);

// Disturbance cross term R = sum over tags of (h(m+1) - h(q+1)) (r(m) - r(q))^T
// with h(t+1) = a + f(t) + w(t+1) - A w(t) from the recorded noises; satisfies
// A P = Q - R exactly. Requires a trajectory recorded with noise.
Matrix noise_cross_term(const Trajectory& traj, const LinearSystem& system,
                        const IndexFamily& family);

// Side-by-side feasibility verdicts for the difference-based and plain
// estimators reading the observations r(k..p). Both ranks use the shared SVD
// tolerance, applied to the factors rather than their Gram products.
struct FeasibilityReport {
  int rank_p = 0;    // rank of the base difference columns
  int rank_xtx = 0;  // rank of the [r(m); 1] regressor rows, m in [k, p]
  bool equivalent = false;  // (rank_p == n) holds iff (rank_xtx == n+1) does
};

FeasibilityReport feasibility_report(const Trajectory& traj, int k, int p,
                                     const IndexFamily& family);

// Model error is the spectral norm of A_hat - A; infeasible results count
// their zero estimate at face value.
double model_error(const InferenceResult& result, const Matrix& true_a_matrix);

}  // namespace sysid
