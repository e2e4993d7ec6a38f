#pragma once

#include "sysid/eta.hpp"
#include "sysid/moments.hpp"

namespace sysid {

// Scalar source slots behind the stacked disturbance vector: x(1), w(k..p),
// f(1..p-1), a. Every eta block is a signed sum of at most two sources, so
// the full covariance factors as (S V S^T) kron I_n with S the integer
// incidence of blocks onto sources and V the diagonal of source variances.
struct SourceLayout {
  int k = 1;
  int p = 2;

  int x_slot() const { return 0; }
  int w_slot(int j) const { return 1 + (j - k); }
  int f_slot(int j) const { return 1 + (p - k + 1) + (j - 1); }
  int a_slot() const { return 1 + (p - k + 1) + (p - 1); }
  int count() const { return a_slot() + 1; }

  // V diagonal in slot order.
  Vector source_variances(const NoiseVariances& var) const;
};

// Adds the weighted Gram contribution of one tag's blocks to `gram`, which
// accumulates G = V^{1/2} S^T S V^{1/2}. G shares its nonzero spectrum with
// the scalar covariance S V S^T, so lambda_max(G) is the covariance norm;
// this is what makes norm evaluation cheap for large families.
void accumulate_tag_gram(Matrix& gram, const SourceLayout& layout,
                         const Vector& sqrt_var, int m, int q);

class EtaCovariance {
 public:
  EtaCovariance(const IndexFamily& family, const NoiseVariances& var, int n);

  int n() const { return n_; }
  long blocks() const { return static_cast<long>(rows_.size()); }

  // Spectral norm of the full covariance, via the source-side Gram.
  double norm() const;

  // Smallest eigenvalue of the full covariance (equals that of the scalar
  // factor); dense path, intended for small families.
  double min_eigenvalue() const;

  // Scalar factor C_s with C_v = C_s kron I_n; dense, small families only.
  Matrix scalar_dense() const;

  // Full covariance, test-sized families only.
  Matrix dense() const;

 private:
  struct Row {
    int slot_a = -1;
    double coef_a = 0.0;
    int slot_b = -1;
    double coef_b = 0.0;
  };

  int n_ = 0;
  SourceLayout layout_;
  Vector variance_;  // V diagonal
  std::vector<Row> rows_;
};

}  // namespace sysid
