#include "sysid/estimators.hpp"

#include <string>

#include "sysid/data_matrices.hpp"
#include "sysid/errors.hpp"

namespace sysid {

namespace {

void check_steps(const Trajectory& traj, int k, int p) {
  if (k < 1 || p <= k) {
    throw ConfigError("estimator window needs 1 <= k < p, got k=" + std::to_string(k) +
                      " p=" + std::to_string(p));
  }
  if (traj.steps() < p) {
    throw ConfigError("trajectory has " + std::to_string(traj.steps()) +
                      " steps but the window ends at p=" + std::to_string(p));
  }
}

}  // namespace

InferenceResult proposed_infer(const Trajectory& traj, const IndexFamily& family) {
  Matrix x_base = base_matrix(traj, family);
  Matrix x_shift = shift_matrix(traj, family);
  const int n = traj.n();

  InferenceResult result;
  result.A = Matrix::Zero(n, n);
  result.a = Vector::Zero(n);
  result.rank = svd_rank(x_base);
  result.feasible = result.rank == n;
  if (!result.feasible) return result;

  result.A = lstsq(x_base.transpose(), x_shift.transpose()).transpose();

  const int last = family.max_q();
  for (int m = family.k; m <= last; ++m) {
    result.a += traj.r(m + 1) - result.A * traj.r(m);
  }
  result.a /= static_cast<double>(last + 1 - family.k);
  return result;
}

InferenceResult naive_infer(const Trajectory& traj, int k, int p) {
  check_steps(traj, k, p);
  const int n = traj.n();
  const int rows = p - k;

  Matrix x_hat(rows, n + 1);
  Matrix y_hat(rows, n);
  for (int m = k; m < p; ++m) {
    x_hat.row(m - k).head(n) = traj.r(m).transpose();
    x_hat(m - k, n) = 1.0;
    y_hat.row(m - k) = traj.r(m + 1).transpose();
  }

  InferenceResult result;
  result.A = Matrix::Zero(n, n);
  result.a = Vector::Zero(n);
  result.rank = svd_rank(x_hat);
  result.feasible = result.rank == n + 1;
  if (!result.feasible) return result;

  Matrix theta = lstsq(x_hat, y_hat);  // (n+1) x n, [A^T; a^T]
  result.A = theta.topRows(n).transpose();
  result.a = theta.row(n).transpose();
  return result;
}

InferenceResult raw_ols_infer(const Trajectory& traj, int k, int p) {
  check_steps(traj, k, p);
  const int n = traj.n();
  const int cols = p - k;

  Matrix w(n, cols);
  Matrix y(n, cols);
  for (int m = k; m < p; ++m) {
    w.col(m - k) = traj.r(m);
    y.col(m - k) = traj.r(m + 1);
  }

  InferenceResult result;
  result.A = Matrix::Zero(n, n);
  result.a = Vector::Zero(n);
  result.rank = svd_rank(w);
  result.feasible = result.rank == n;
  if (!result.feasible) return result;

  result.A = lstsq(w.transpose(), y.transpose()).transpose();
  return result;
}

Matrix gram_p(const Trajectory& traj, const IndexFamily& family) {
  Matrix x = base_matrix(traj, family);
  return x * x.transpose();
}

Matrix cross_q(const Trajectory& traj, const IndexFamily& family) {
  Matrix x_base = base_matrix(traj, family);
  Matrix x_shift = shift_matrix(traj, family);
  return x_shift * x_base.transpose();
}

Matrix noise_cross_term(const Trajectory& traj, const LinearSystem& system,
                        const IndexFamily& family) {
  if (!traj.has_noise()) {
    throw ConfigError("noise cross term needs a trajectory recorded with noise");
  }
  if (traj.steps() < family.max_q() + 1) {
    throw ConfigError("trajectory too short for the shifted window");
  }
  const int n = traj.n();

  // h(t+1) - h(q+1) where h(t+1) = a + f(t) + w(t+1) - A w(t); the offsets
  // cancel in the difference.
  auto h_diff = [&](int m, int q) -> Vector {
    Vector fm = traj.process_noise.col(m - 1);
    Vector fq = traj.process_noise.col(q - 1);
    Vector wm1 = traj.observation_noise.col(m);
    Vector wq1 = traj.observation_noise.col(q);
    Vector wm = traj.observation_noise.col(m - 1);
    Vector wq = traj.observation_noise.col(q - 1);
    return fm - fq + wm1 - wq1 - system.A * (wm - wq);
  };

  Matrix r_sum = Matrix::Zero(n, n);
  for (auto [m, q] : family.tags()) {
    Vector base = traj.r(m) - traj.r(q);
    r_sum += h_diff(m, q) * base.transpose();
  }
  return r_sum;
}

FeasibilityReport feasibility_report(const Trajectory& traj, int k, int p,
                                     const IndexFamily& family) {
  check_steps(traj, k, p);
  const int n = traj.n();

  FeasibilityReport report;
  report.rank_p = svd_rank(base_matrix(traj, family));

  // Rows cover every observation the differences touch, r(k) through r(p);
  // both ranks then measure the span of differences among the same points,
  // so the verdicts agree on all data, not just generic data.
  Matrix x_hat(p - k + 1, n + 1);
  for (int m = k; m <= p; ++m) {
    x_hat.row(m - k).head(n) = traj.r(m).transpose();
    x_hat(m - k, n) = 1.0;
  }
  report.rank_xtx = svd_rank(x_hat);

  report.equivalent = (report.rank_p == n) == (report.rank_xtx == n + 1);
  return report;
}

double model_error(const InferenceResult& result, const Matrix& true_a_matrix) {
  return spectral_norm(result.A - true_a_matrix);
}

}  // namespace sysid
