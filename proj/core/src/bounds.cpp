#include "sysid/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sysid/covariance.hpp"
#include "sysid/errors.hpp"
#include "sysid/stacked_map.hpp"

namespace sysid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : kInf; }

std::vector<Matrix> powers_up_to(const Matrix& a, int top) {
  std::vector<Matrix> pw;
  pw.reserve(top + 1);
  pw.push_back(Matrix::Identity(a.rows(), a.cols()));
  for (int i = 1; i <= top; ++i) pw.push_back(a * pw.back());
  return pw;
}

double geometric_sum(double ratio, int lo, int hi) {
  double sum = 0.0;
  double term = std::pow(ratio, lo);
  for (int i = lo; i <= hi; ++i) {
    sum += term;
    term *= ratio;
  }
  return sum;
}

// ln(((1-rho3)/2)^{n/2} * 2 * 5^n / delta)
double horizon_log(double rho3, double delta, int n) {
  return 0.5 * n * std::log((1.0 - rho3) / 2.0) + std::log(2.0) + n * std::log(5.0) -
         std::log(delta);
}

void check_pac_domain(const ComplexityConfig& config, double phi, double delta) {
  config.validate();
  if (phi <= 0.0) throw ConfigError("phi must be positive");
  if (delta <= 0.0 || delta >= 1.0) throw ConfigError("delta must lie in (0, 1)");
}

}  // namespace

void ComplexityConfig::validate() const {
  if (rho3 <= 0.0 || rho3 >= 1.0) throw ConfigError("rho3 must lie in (0, 1)");
  if (eps < 0.0 || eps >= 0.5) throw ConfigError("eps must lie in [0, 0.5)");
  if (gamma <= 0.0 || kappa <= 0.0 || c_universal <= 0.0) {
    throw ConfigError("gamma, kappa, c_universal must be positive");
  }
}

void SpectralBounds::validate() const {
  if (sigma_min_a < 0.0 || sigma_min_diff < 0.0) {
    throw ConfigError("singular-value lower bounds must be nonnegative");
  }
  if (sigma_max_a < 0.0 || power_diff_max < 0.0) {
    throw ConfigError("norm upper bounds must be nonnegative");
  }
}

SpectralBounds exact_spectral_bounds(const Matrix& a_matrix, int k, int p) {
  if (k < 1 || p <= k) throw ConfigError("spectral bounds need 1 <= k < p");
  const int n = static_cast<int>(a_matrix.rows());
  auto pw = powers_up_to(a_matrix, p - 1);

  SpectralBounds b;
  {
    Eigen::JacobiSVD<Matrix> svd(a_matrix);
    b.sigma_min_a = svd.singularValues().minCoeff();
    b.sigma_max_a = svd.singularValues().maxCoeff();
  }
  b.sigma_min_diff = kInf;
  for (int t = 1; t <= p - k; ++t) {
    Eigen::JacobiSVD<Matrix> svd(pw[t] - Matrix::Identity(n, n));
    b.sigma_min_diff = std::min(b.sigma_min_diff, svd.singularValues().minCoeff());
  }
  b.power_diff_max = 0.0;
  for (int j = k; j < p; ++j) {
    for (int m = j + 1; m <= p; ++m) {
      b.power_diff_max = std::max(b.power_diff_max, spectral_norm(pw[j - 1] - pw[m - 1]));
    }
  }
  return b;
}

MeanExtras mean_extras(const Matrix& a_matrix, const NoiseVariances& var, int k, int p) {
  if (k < 1 || p <= k) throw ConfigError("mean extras need 1 <= k < p");
  const int n = static_cast<int>(a_matrix.rows());
  const double len = p - k;
  auto pw = powers_up_to(a_matrix, p - 1);
  const Matrix eye = Matrix::Identity(n, n);

  Matrix pow_sum = Matrix::Zero(n, n);
  for (int m = k; m <= p - 1; ++m) pow_sum += pw[m - 1];

  Matrix double_sum = Matrix::Zero(n, n);
  for (int m = k; m <= p - 1; ++m) {
    for (int i = 0; i <= m - 2; ++i) double_sum += pw[i];
  }

  // inner(m) = sum over i in [k-1-m, p-2-m] of A^i, counting only i >= 1.
  std::vector<Matrix> inner;
  for (int m = 1; m <= p - 2; ++m) {
    Matrix s = Matrix::Zero(n, n);
    for (int i = std::max(1, k - 1 - m); i <= p - 2 - m; ++i) s += pw[i];
    inner.push_back(s);
  }

  Matrix c_under = var.observation / len * eye +
                   var.initial / (len * len) * pow_sum * pow_sum.transpose() +
                   var.offset / (len * len) * double_sum * double_sum.transpose();
  double h_over = var.initial / (len * len) * pow_sum.squaredNorm() +
                  var.offset / (len * len) * double_sum.squaredNorm() +
                  n * var.observation / len;
  for (const Matrix& s : inner) {
    c_under += var.process / (len * len) * s * s.transpose();
    h_over += var.process / (len * len) * s.squaredNorm();
  }

  Matrix c_over = ((var.process + var.observation) * eye +
                   var.observation * a_matrix * a_matrix.transpose()) /
                      len -
                  (len - 1.0) * var.observation * (a_matrix + a_matrix.transpose()) /
                      (len * len);
  double h_under = (n * (var.process + var.observation) +
                    a_matrix.squaredNorm() * var.observation) /
                       len -
                   2.0 * (len - 1.0) * var.observation * a_matrix.trace() / (len * len);

  MeanExtras extras;
  extras.c_under_norm = spectral_norm(c_under);
  extras.c_over_norm = spectral_norm(c_over);
  extras.h_under = h_under;
  extras.h_over = h_over;
  return extras;
}

BoundSet make_bound_set(int k, int p, int n, const NoiseVariances& var,
                        const SpectralBounds& spectral) {
  if (k < 1 || p <= k) throw ConfigError("bound set needs 1 <= k < p");
  if (n < 1) throw ConfigError("bound set needs n >= 1");
  spectral.validate();

  BoundSet b;
  b.k = k;
  b.p = p;
  b.n = n;
  b.var = var;
  b.spectral = spectral;

  double head = std::pow(spectral.sigma_min_a, 2 * k - 2);
  b.f2 = head * spectral.sigma_min_diff * spectral.sigma_min_diff * var.initial +
         2.0 * var.observation;
  b.f1 = b.f2 + head * var.process;

  b.g_factor = 1.0 + spectral.power_diff_max +
               geometric_sum(spectral.sigma_max_a, 0, p - 3) +
               geometric_sum(spectral.sigma_max_a, k - 1, p - 2);
  return b;
}

double f_pair(const BoundSet& bounds, int r, int q) {
  if (r < 1 || q <= r) throw ConfigError("f_pair needs 1 <= r < q");
  double head = std::pow(bounds.spectral.sigma_min_a, 2 * r - 2);
  double base = head * bounds.spectral.sigma_min_diff * bounds.spectral.sigma_min_diff *
                    bounds.var.initial +
                2.0 * bounds.var.observation;
  if (q > 2 * r - 1) base += head * bounds.var.process;
  return base;
}

double f_sum(const BoundSet& bounds, const IndexFamily& family) {
  double total = 0.0;
  for (auto [m, q] : family.tags()) total += f_pair(bounds, m, q);
  return total;
}

double p_bound(const BoundSet& bounds, const IndexFamily& family) {
  double fs = f_sum(bounds, family);
  if (fs <= 0.0) {
    throw NumericalError("p_bound undefined: per-tag moment floors sum to zero");
  }
  return bounds.g_factor * bounds.g_factor / fs;
}

double l_up_raw(const ComplexityConfig& config, int n, double phi, double delta,
                double f2) {
  check_pac_domain(config, phi, delta);
  if (f2 <= 0.0) throw ConfigError("l_up needs f2 > 0");
  double log_term = horizon_log(config.rho3, delta, n);
  if (log_term <= 0.0) {
    throw NumericalError("horizon bound undefined: log term is nonpositive at rho3=" +
                         std::to_string(config.rho3) + ", delta=" +
                         std::to_string(delta));
  }
  return 32.0 * config.c_universal * config.kappa * config.kappa /
             ((1.0 - config.rho3) * phi * phi * f2) * log_term +
         1.0;
}

long l_up(const ComplexityConfig& config, int n, double phi, double delta, double f2) {
  return static_cast<long>(std::ceil(l_up_raw(config, n, phi, delta, f2)));
}

double m_lo(const ComplexityConfig& config, int n, double phi, double delta, double f2,
            long l_value) {
  check_pac_domain(config, phi, delta);
  if (f2 <= 0.0 || l_value < 1) throw ConfigError("m_lo needs f2 > 0 and l >= 1");
  double log_term = horizon_log(config.rho3, delta, n);
  if (log_term <= 0.0) {
    throw NumericalError("error floor undefined: log term is nonpositive");
  }
  return std::sqrt(32.0 * config.c_universal * config.kappa * config.kappa /
                   (f2 * static_cast<double>(l_value) * (1.0 - config.rho3)) * log_term);
}

EpsilonRoot epsilon_opt(double a, double b, int n) {
  if (a <= 0.0 || b <= 0.0 || n < 1) throw ConfigError("epsilon_opt needs a, b, n > 0");
  auto cubic = [](double e) { return (1.0 - 2.0 * e) * (2.0 + e) * e; };

  EpsilonRoot root;
  root.target = n * b / (2.0 * a);
  // Stationary point of 2e - 3e^2 - 2e^3 on [0, 1/2).
  double peak_at = (-3.0 + std::sqrt(21.0)) / 6.0;
  root.peak = cubic(peak_at);

  if (root.target > root.peak) {
    root.found = false;
    return root;
  }
  double lo = 0.0;
  double hi = peak_at;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cubic(mid) < root.target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  root.found = true;
  root.eps = 0.5 * (lo + hi);
  root.residual = std::abs(cubic(root.eps) - root.target);
  return root;
}

double phi_hat(double phi, int n, double rho1, double rho2, double mu, double h_over,
               double h_under, double mean_shift) {
  if (phi <= 0.0) throw ConfigError("phi_hat needs phi > 0");
  double rad1 = rho1 + h_over;
  double rad2 = rho2 + h_under;
  if (rad1 < 0.0 || rad2 < 0.0) {
    throw NumericalError("phi_hat radicand negative: rho1+h_over=" +
                         std::to_string(rad1) + ", rho2+h_under=" +
                         std::to_string(rad2));
  }
  return (std::sqrt(rad1) + std::sqrt(static_cast<double>(n)) * mu) * phi +
         std::sqrt(rad2) + mean_shift;
}

double mean_shift_exact(const Matrix& a_matrix, double mu) {
  Vector ones = Vector::Ones(a_matrix.rows());
  return (mu * ones - a_matrix * (mu * ones)).norm();
}

double mean_shift_bound(double sigma_max_a, int n, double mu) {
  return std::abs(mu) * (1.0 + sigma_max_a) * std::sqrt(static_cast<double>(n));
}

ConditionInputs condition_inputs(const BoundSet& bounds, const IndexFamily& family) {
  ConditionInputs in;
  in.n = bounds.n;
  in.block_count = family.stacked_block_count();
  in.cv_norm = EtaCovariance(family, bounds.var, bounds.n).norm();
  in.p_bound = p_bound(bounds, family);
  in.f_sum = f_sum(bounds, family);
  in.f2 = bounds.f2;
  return in;
}

void attach_exact_inputs(ConditionInputs& inputs, const Matrix& a_matrix,
                         const BoundSet& bounds, const IndexFamily& family) {
  MomentSet ms = gamma_and_whitener(a_matrix, bounds.var, family);
  inputs.gamma_min = min_eigenvalue_sym(ms.gamma);
  inputs.pi_upsilon_norm = pi_upsilon_norm(a_matrix, ms.whitener, family);
}

ConditionReport check_conditions(const ConditionInputs& inputs,
                                 const ComplexityConfig& config, double phi,
                                 double delta, double l_up_ref) {
  check_pac_domain(config, phi, delta);
  if (config.eps <= 0.0) {
    throw ConfigError("condition check needs eps > 0 (the net term 2/eps + 1)");
  }
  const double eps = config.eps;
  const double rho3 = config.rho3;
  const int n = inputs.n;
  const double nb = static_cast<double>(inputs.block_count);

  ConditionReport report;

  double rhs_conc = 0.5 * config.gamma * config.gamma *
                    (std::log(4.0) + n * std::log(2.0 / eps + 1.0) - std::log(delta));

  {
    double first = safe_ratio((1.0 - 2.0 * eps) * (1.0 - 2.0 * eps) * rho3 * rho3,
                              nb * inputs.p_bound * inputs.p_bound * inputs.cv_norm);
    double second = safe_ratio((1.0 - 2.0 * eps) * rho3, inputs.p_bound);
    report.c34.lhs = std::min(first, second);
    report.c34.rhs = rhs_conc;
  }

  if (inputs.pi_upsilon_norm) {
    double pu2 = *inputs.pi_upsilon_norm * *inputs.pi_upsilon_norm;
    double first = safe_ratio((1.0 - 2.0 * eps) * (1.0 - 2.0 * eps) * rho3 * rho3,
                              nb * pu2 * pu2 * inputs.cv_norm);
    double second = safe_ratio((1.0 - 2.0 * eps) * rho3, pu2);
    report.c29.lhs = std::min(first, second);
    report.c29.rhs = rhs_conc;
    report.exact_29 = true;
  } else {
    report.c29 = report.c34;
  }

  double log_term = horizon_log(rho3, delta, n);
  report.c30.lhs = inputs.gamma_min ? *inputs.gamma_min : inputs.f_sum;
  report.c30.rhs = 32.0 * config.c_universal * config.kappa * config.kappa /
                   (phi * phi * (1.0 - rho3)) * log_term;

  report.c41.lhs = l_up_ref;
  report.c41.rhs = safe_ratio(32.0 * config.c_universal * config.kappa * config.kappa,
                              (1.0 - rho3) * phi * phi * inputs.f2) *
                       log_term +
                   1.0;

  for (ConditionTerm* term : {&report.c29, &report.c30, &report.c34, &report.c41}) {
    term->margin = term->lhs - term->rhs;
    term->holds = term->lhs >= term->rhs;
  }
  return report;
}

double concentration_tail_bound(const ConditionInputs& inputs,
                                const ComplexityConfig& config) {
  config.validate();
  if (config.eps <= 0.0) throw ConfigError("tail bound needs eps > 0");
  const double eps = config.eps;
  const double rho3 = config.rho3;
  const double nb = static_cast<double>(inputs.block_count);

  double min_term;
  if (inputs.pi_upsilon_norm) {
    double pu2 = *inputs.pi_upsilon_norm * *inputs.pi_upsilon_norm;
    min_term = std::min(
        safe_ratio((1.0 - 2.0 * eps) * (1.0 - 2.0 * eps) * rho3 * rho3,
                   nb * pu2 * pu2 * inputs.cv_norm),
        safe_ratio((1.0 - 2.0 * eps) * rho3, pu2));
  } else {
    min_term = std::min(
        safe_ratio((1.0 - 2.0 * eps) * (1.0 - 2.0 * eps) * rho3 * rho3,
                   nb * inputs.p_bound * inputs.p_bound * inputs.cv_norm),
        safe_ratio((1.0 - 2.0 * eps) * rho3, inputs.p_bound));
  }
  double log_tail = std::log(2.0) + inputs.n * std::log(2.0 / eps + 1.0) -
                    min_term / (config.c_universal * config.kappa * config.kappa);
  return std::exp(log_tail);
}

}  // namespace sysid
