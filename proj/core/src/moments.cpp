#include "sysid/moments.hpp"

#include <vector>

#include "sysid/errors.hpp"

namespace sysid {

NoiseVariances variances(const NoiseModel& noise) {
  NoiseVariances var;
  var.initial = noise.initial.variance();
  var.process = noise.process.variance();
  var.observation = noise.observation.variance();
  var.offset = noise.offset ? noise.offset->variance() : 0.0;
  return var;
}

namespace {

std::vector<Matrix> powers_up_to(const Matrix& a, int top) {
  std::vector<Matrix> pw;
  pw.reserve(top + 1);
  pw.push_back(Matrix::Identity(a.rows(), a.cols()));
  for (int i = 1; i <= top; ++i) pw.push_back(a * pw.back());
  return pw;
}

}  // namespace

Matrix expected_diff_moment(const Matrix& a_matrix, const NoiseVariances& var, int k,
                            int m) {
  if (k < 1 || m <= k) throw ConfigError("expected_diff_moment: need 1 <= k < m");
  const int n = static_cast<int>(a_matrix.rows());
  const Matrix eye = Matrix::Identity(n, n);
  auto pw = powers_up_to(a_matrix, m - 1);

  Matrix diff = pw[k - 1] - pw[m - 1];
  Matrix phi = diff * diff.transpose() * var.initial + 2.0 * var.observation * eye;
  for (int i = k - 1; i <= m - 2; ++i) {
    phi += pw[i] * pw[i].transpose() * (var.process + var.offset);
  }
  for (int i = 0; i <= k - 2; ++i) {
    phi += 2.0 * pw[i] * pw[i].transpose() * var.process;
  }

  Matrix omega = Matrix::Zero(n, n);
  if (2 * k - m >= 1) {
    for (int i = k - 1; i <= m - 2; ++i) {
      omega += (pw[i - m + k] * pw[i].transpose() + pw[i] * pw[i - m + k].transpose()) *
               var.process;
    }
  } else {
    for (int i = 0; i <= k - 2; ++i) {
      omega += (pw[i] * pw[i + m - k].transpose() + pw[i + m - k] * pw[i].transpose()) *
               var.process;
    }
  }

  Matrix theta = Matrix::Zero(n, n);
  if (2 * k - m >= 2) {
    for (int i = 0; i <= 2 * k - m - 2; ++i) {
      theta += (pw[i] * pw[i + m - k].transpose() + pw[i + m - k] * pw[i].transpose()) *
               var.process;
    }
  }

  return phi - omega - theta;
}

MomentSet gamma_and_whitener(const Matrix& a_matrix, const NoiseVariances& var,
                             const IndexFamily& family) {
  family.validate();
  const int n = static_cast<int>(a_matrix.rows());
  Matrix gamma = Matrix::Zero(n, n);
  for (auto [m, q] : family.tags()) {
    gamma += expected_diff_moment(a_matrix, var, m, q);
  }

  MomentSet set;
  set.gamma = gamma;
  set.whitener = inverse_sqrt_spd(gamma, "moment matrix");
  set.whitener_norm = spectral_norm(set.whitener);
  return set;
}

}  // namespace sysid
