#pragma once

#include <optional>

#include "sysid/complexity_config.hpp"
#include "sysid/index_family.hpp"
#include "sysid/moments.hpp"

namespace sysid {

// User-supplied (or exactly computed) spectral envelopes of the unknown A
// over a window [k, p].
struct SpectralBounds {
  double sigma_min_a = 0.0;     // <= smallest singular value of A
  double sigma_min_diff = 0.0;  // <= min over t in [1, p-k] of sigma_min(A^t - I)
  double sigma_max_a = 0.0;     // >= ||A||
  double power_diff_max = 0.0;  // >= max over k <= j < m <= p of ||A^{j-1} - A^{m-1}||

  void validate() const;
};

SpectralBounds exact_spectral_bounds(const Matrix& a_matrix, int k, int p);

// Window-averaged covariance scalars entering the offset-error bound; they
// need the true A.
struct MeanExtras {
  double c_under_norm = 0.0;  // spectral norm of the mean-observation covariance
  double c_over_norm = 0.0;   // spectral norm of the mean-bias covariance
  double h_under = 0.0;       // bias-side second-moment scalar; can be negative
  double h_over = 0.0;        // observation-side second-moment scalar
};

MeanExtras mean_extras(const Matrix& a_matrix, const NoiseVariances& var, int k, int p);

// Scalars derived from the spectral envelopes for one window.
//   f1 = s_min^{2k-2} s_diff^2 si^2 + s_min^{2k-2} sp^2 + 2 so^2
//   f2 = s_min^{2k-2} s_diff^2 si^2 + 2 so^2
//   g_factor = 1 + power_diff_max + sum_{i=0}^{p-3} s_max^i
//                + sum_{i=k-1}^{p-2} s_max^i
// The two power sums are evaluated as finite sums, which keeps g_factor
// positive and well defined at s_max = 1; they cover the widest per-tag row
// of the stacked map, which is what the norm bound needs.
struct BoundSet {
  int k = 1;
  int p = 2;
  int n = 1;
  NoiseVariances var;
  SpectralBounds spectral;
  double f1 = 0.0;
  double f2 = 0.0;
  double g_factor = 0.0;
  std::optional<MeanExtras> extras;
};

BoundSet make_bound_set(int k, int p, int n, const NoiseVariances& var,
                        const SpectralBounds& spectral);

// Per-tag moment floor: f1 at the tag's own first index r when q > 2r - 1,
// else f2 at r.
double f_pair(const BoundSet& bounds, int r, int q);
double f_sum(const BoundSet& bounds, const IndexFamily& family);

// p_bound = g_factor^2 / f_sum, the A-free cap on the whitened-map norm
// squared.
double p_bound(const BoundSet& bounds, const IndexFamily& family);

// Observation-count bound: 32 c kappa^2 / ((1-rho3) phi^2 f2) * L + 1 with
// L = ln(((1-rho3)/2)^{n/2} * 2 * 5^n / delta), then ceiled. Throws
// NumericalError when L <= 0 (rho3 and delta inconsistent).
double l_up_raw(const ComplexityConfig& config, int n, double phi, double delta,
                double f2);
long l_up(const ComplexityConfig& config, int n, double phi, double delta, double f2);

// Error floor at a given horizon: sqrt(32 c kappa^2 / (f2 l (1-rho3)) * L).
double m_lo(const ComplexityConfig& config, int n, double phi, double delta, double f2,
            long l_value);

// Smallest root of (1 - 2e)(2 + e)e = n b / (2 a) on [0, 1/2), found by
// bisection below the cubic's peak. `found` is false when the target exceeds
// the cubic's maximum there; `peak` reports that maximum either way.
struct EpsilonRoot {
  bool found = false;
  double eps = 0.0;
  double residual = 0.0;
  double target = 0.0;
  double peak = 0.0;
};

EpsilonRoot epsilon_opt(double a, double b, int n);

// Offset-error radius: (sqrt(rho1 + h_over) + sqrt(n) mu) phi
//                      + sqrt(rho2 + h_under) + mean_shift.
// Throws NumericalError on a negative radicand (h_under can be negative).
double phi_hat(double phi, int n, double rho1, double rho2, double mu, double h_over,
               double h_under, double mean_shift);

double mean_shift_exact(const Matrix& a_matrix, double mu);
double mean_shift_bound(double sigma_max_a, int n, double mu);

// Family-level quantities entering the feasibility conditions. The exact-A
// fields stay empty on the bounds-only route; the moment-concentration
// condition then reuses its bound form.
struct ConditionInputs {
  int n = 1;
  long block_count = 0;   // stacked blocks of the family
  double cv_norm = 0.0;   // disturbance covariance norm
  double p_bound = 0.0;
  double f_sum = 0.0;
  double f2 = 0.0;
  std::optional<double> pi_upsilon_norm;
  std::optional<double> gamma_min;
};

ConditionInputs condition_inputs(const BoundSet& bounds, const IndexFamily& family);
void attach_exact_inputs(ConditionInputs& inputs, const Matrix& a_matrix,
                         const BoundSet& bounds, const IndexFamily& family);

struct ConditionTerm {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
};

// c29: exact-A moment concentration (aliases c34 when A is unknown).
// c30: moment floor against the PAC radius; lhs is lambda_min of the moment
//      sum when available, else its rigorous per-tag lower bound f_sum.
// c34: bound-form moment concentration.
// c41: the reference horizon still covers the bound recomputed at the
//      current parameters.
struct ConditionReport {
  ConditionTerm c29, c30, c34, c41;
  bool exact_29 = false;
  bool all_hold() const { return c29.holds && c30.holds && c34.holds && c41.holds; }
};

ConditionReport check_conditions(const ConditionInputs& inputs,
                                 const ComplexityConfig& config, double phi,
                                 double delta, double l_up_ref);

// Tail probability of the moment-concentration event at the configured
// constants; uses the exact-A route when available, else the bound route.
double concentration_tail_bound(const ConditionInputs& inputs,
                                const ComplexityConfig& config);

}  // namespace sysid
