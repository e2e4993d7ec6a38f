#include "sysid/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sysid/errors.hpp"

namespace sysid {

Vector SourceLayout::source_variances(const NoiseVariances& var) const {
  Vector v = Vector::Zero(count());
  v(x_slot()) = var.initial;
  for (int j = k; j <= p; ++j) v(w_slot(j)) = var.observation;
  for (int j = 1; j <= p - 1; ++j) v(f_slot(j)) = var.process;
  v(a_slot()) = var.offset;
  return v;
}

void accumulate_tag_gram(Matrix& gram, const SourceLayout& layout,
                         const Vector& sqrt_var, int m, int q) {
  auto add_pair = [&](int sa, double ca, int sb, double cb) {
    double wa = ca * sqrt_var(sa);
    gram(sa, sa) += wa * wa;
    if (sb >= 0) {
      double wb = cb * sqrt_var(sb);
      gram(sb, sb) += wb * wb;
      gram(sa, sb) += wa * wb;
      gram(sb, sa) += wa * wb;
    }
  };

  add_pair(layout.x_slot(), 1.0, -1, 0.0);
  add_pair(layout.w_slot(m), 1.0, layout.w_slot(q), -1.0);
  for (int s = 0; s <= m - 2; ++s) {
    add_pair(layout.f_slot(m - 1 - s), 1.0, layout.f_slot(q - 1 - s), -1.0);
  }
  for (int t = q - m; t >= 1; --t) {
    add_pair(layout.f_slot(t), 1.0, layout.a_slot(), 1.0);
  }
}

EtaCovariance::EtaCovariance(const IndexFamily& family, const NoiseVariances& var,
                             int n)
    : n_(n), layout_{family.k, family.p} {
  if (n < 1) throw ConfigError("eta covariance needs n >= 1");
  variance_ = layout_.source_variances(var);

  auto blocks = eta_blocks(family);
  rows_.reserve(blocks.size());
  for (const auto& b : blocks) {
    Row row;
    switch (b.kind) {
      case EtaBlock::Initial:
        row = {layout_.x_slot(), 1.0, -1, 0.0};
        break;
      case EtaBlock::ObsDiff:
        row = {layout_.w_slot(b.m), 1.0, layout_.w_slot(b.q), -1.0};
        break;
      case EtaBlock::ProcDiff:
        row = {layout_.f_slot(b.first), 1.0, layout_.f_slot(b.second), -1.0};
        break;
      case EtaBlock::ProcOffset:
        row = {layout_.f_slot(b.first), 1.0, layout_.a_slot(), 1.0};
        break;
    }
    rows_.push_back(row);
  }
}

double EtaCovariance::norm() const {
  const int dim = layout_.count();
  const Vector sqrt_var = variance_.cwiseSqrt();

  if (dim <= 256) {
    Matrix gram = Matrix::Zero(dim, dim);
    for (const auto& row : rows_) {
      double wa = row.coef_a * sqrt_var(row.slot_a);
      gram(row.slot_a, row.slot_a) += wa * wa;
      if (row.slot_b >= 0) {
        double wb = row.coef_b * sqrt_var(row.slot_b);
        gram(row.slot_b, row.slot_b) += wb * wb;
        gram(row.slot_a, row.slot_b) += wa * wb;
        gram(row.slot_b, row.slot_a) += wa * wb;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
  }

  // Large windows: power iteration on the same Gram without forming it.
  // One pass applies sqrt(V), the block incidence, its transpose, and
  // sqrt(V) again, each O(rows).
  const auto apply = [&](const Vector& x) -> Vector {
    const Vector u = sqrt_var.cwiseProduct(x);
    Vector w = Vector::Zero(dim);
    for (const auto& row : rows_) {
      double value = row.coef_a * u(row.slot_a);
      if (row.slot_b >= 0) value += row.coef_b * u(row.slot_b);
      w(row.slot_a) += row.coef_a * value;
      if (row.slot_b >= 0) w(row.slot_b) += row.coef_b * value;
    }
    return sqrt_var.cwiseProduct(w);
  };

  Vector x = Vector::Ones(dim).normalized();
  double estimate = 0.0;
  for (int it = 0; it < 200000; ++it) {
    Vector next = apply(x);
    const double scale = next.norm();
    if (!(scale > 0.0)) return 0.0;
    x = next / scale;
    if (it > 2 && std::abs(scale - estimate) <= 1e-13 * std::max(scale, 1.0)) {
      return scale;
    }
    estimate = scale;
  }
  return estimate;
}

Matrix EtaCovariance::scalar_dense() const {
  const long nb = blocks();
  Matrix cs = Matrix::Zero(nb, nb);
  for (long i = 0; i < nb; ++i) {
    for (long j = 0; j < nb; ++j) {
      const Row& a = rows_[i];
      const Row& b = rows_[j];
      double value = 0.0;
      auto term = [&](int slot_i, double coef_i, int slot_j, double coef_j) {
        if (slot_i >= 0 && slot_i == slot_j) value += coef_i * coef_j * variance_(slot_i);
      };
      term(a.slot_a, a.coef_a, b.slot_a, b.coef_a);
      term(a.slot_a, a.coef_a, b.slot_b, b.coef_b);
      term(a.slot_b, a.coef_b, b.slot_a, b.coef_a);
      term(a.slot_b, a.coef_b, b.slot_b, b.coef_b);
      cs(i, j) = value;
    }
  }
  return cs;
}

Matrix EtaCovariance::dense() const {
  Matrix cs = scalar_dense();
  const long nb = blocks();
  Matrix cv = Matrix::Zero(nb * n_, nb * n_);
  for (long i = 0; i < nb; ++i) {
    for (long j = 0; j < nb; ++j) {
      cv.block(i * n_, j * n_, n_, n_) = cs(i, j) * Matrix::Identity(n_, n_);
    }
  }
  return cv;
}

double EtaCovariance::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(scalar_dense(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace sysid
