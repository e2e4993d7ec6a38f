#include "sysid/stacked_map.hpp"

#include <Eigen/Eigenvalues>
#include <vector>

#include "sysid/errors.hpp"

namespace sysid {

namespace {

std::vector<Matrix> powers_up_to(const Matrix& a, int top) {
  std::vector<Matrix> pw;
  pw.reserve(top + 1);
  pw.push_back(Matrix::Identity(a.rows(), a.cols()));
  for (int i = 1; i <= top; ++i) pw.push_back(a * pw.back());
  return pw;
}

}  // namespace

Matrix build_pi(const Matrix& a_matrix, const IndexFamily& family) {
  const int n = static_cast<int>(a_matrix.rows());
  auto tags = family.tags();
  auto blocks = eta_blocks(family);
  auto pw = powers_up_to(a_matrix, family.max_q() - 1);

  Matrix pi = Matrix::Zero(static_cast<long>(tags.size()) * n,
                           static_cast<long>(blocks.size()) * n);

  // Tag lookup: blocks carry (m, q); rows follow tag order.
  auto tag_row = [&](int m, int q) -> long {
    for (size_t i = 0; i < tags.size(); ++i) {
      if (tags[i].first == m && tags[i].second == q) return static_cast<long>(i) * n;
    }
    throw ConfigError("block references unknown tag");
  };

  for (size_t col = 0; col < blocks.size(); ++col) {
    const auto& b = blocks[col];
    long row = tag_row(b.m, b.q);
    long c = static_cast<long>(col) * n;
    switch (b.kind) {
      case EtaBlock::Initial:
        pi.block(row, c, n, n) = pw[b.m - 1] - pw[b.q - 1];
        break;
      case EtaBlock::ObsDiff:
        pi.block(row, c, n, n) = Matrix::Identity(n, n);
        break;
      case EtaBlock::ProcDiff:
        // Block holds f(m-1-s) - f(q-1-s); coefficient A^s with s = m-1-first.
        pi.block(row, c, n, n) = pw[b.m - 1 - b.first];
        break;
      case EtaBlock::ProcOffset:
        // Block holds f(t) + a; coefficient -A^{q-1-t}.
        pi.block(row, c, n, n) = -pw[b.q - 1 - b.first];
        break;
    }
  }
  return pi;
}

Vector stacked_differences(const Trajectory& traj, const IndexFamily& family) {
  const int n = traj.n();
  auto tags = family.tags();
  Vector out(static_cast<long>(tags.size()) * n);
  for (size_t i = 0; i < tags.size(); ++i) {
    out.segment(static_cast<long>(i) * n, n) =
        traj.r(tags[i].first) - traj.r(tags[i].second);
  }
  return out;
}

double pi_upsilon_norm(const Matrix& a_matrix, const Matrix& whitener,
                       const IndexFamily& family) {
  const int n = static_cast<int>(a_matrix.rows());
  auto pw = powers_up_to(a_matrix, family.max_q() - 1);

  // Cumulative power Grams: cum[j] = sum_{i=0}^{j-1} A^i (A^i)^T.
  std::vector<Matrix> cum(pw.size() + 1, Matrix::Zero(n, n));
  for (size_t i = 0; i < pw.size(); ++i) cum[i + 1] = cum[i] + pw[i] * pw[i].transpose();

  double best = 0.0;
  for (auto [m, q] : family.tags()) {
    Matrix head = pw[m - 1] - pw[q - 1];
    Matrix gram = head * head.transpose() + Matrix::Identity(n, n) +
                  cum[m - 1] +            // ProcDiff coefficients A^0..A^{m-2}
                  (cum[q - 1] - cum[m - 1]);  // ProcOffset, A^{m-1}..A^{q-2}
    Matrix whitened = whitener * gram * whitener.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(whitened, Eigen::EigenvaluesOnly);
    best = std::max(best, eig.eigenvalues().maxCoeff());
  }
  return std::sqrt(std::max(best, 0.0));
}

}  // namespace sysid
