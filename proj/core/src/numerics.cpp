#include "sysid/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sysid/errors.hpp"

namespace sysid {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

int svd_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  double tol = std::max(m.rows(), m.cols()) * kEps * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) ++rank;
  }
  return rank;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double min_eigenvalue_sym(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Matrix inverse_sqrt_spd(const Matrix& m, const char* context) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector& ev = es.eigenvalues();
  double floor = 1e-12 * ev(ev.size() - 1);
  if (!(ev(0) > floor)) {
    throw NumericalError(std::string(context) +
                         ": matrix is numerically singular (min eigenvalue " +
                         std::to_string(ev(0)) + ")");
  }
  Vector inv_sqrt = ev.array().sqrt().inverse().matrix();
  return es.eigenvectors() * inv_sqrt.asDiagonal() *
         es.eigenvectors().transpose();
}

Matrix lstsq(const Matrix& a, const Matrix& b) {
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace sysid
