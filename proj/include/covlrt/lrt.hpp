#pragma once

#include <span>
#include <vector>

#include "covlrt/linalg.hpp"

namespace covlrt {

/// Dimension p and group sizes n_1..n_k of a k-sample covariance test.
/// Construction enforces k >= 2, p >= 1 and n_i > p for every group, the
/// condition under which every group scatter matrix is almost surely of full
/// rank and the likelihood ratio exists.
class DesignSpec {
 public:
  DesignSpec(int p, std::vector<int> group_sizes);

  /// k groups of equal size n.
  static DesignSpec balanced(int p, int k, int n);

  int p() const { return p_; }
  int k() const { return static_cast<int>(group_sizes_.size()); }
  const std::vector<int>& group_sizes() const { return group_sizes_; }
  int group_size(int i) const { return group_sizes_[static_cast<std::size_t>(i)]; }
  /// n = n_1 + ... + n_k.
  long total() const { return total_; }
  int min_group_size() const { return min_size_; }

  friend bool operator==(const DesignSpec&, const DesignSpec&) = default;

 private:
  int p_;
  std::vector<int> group_sizes_;
  long total_ = 0;
  int min_size_ = 0;
};

/// Log-determinants of the group scatter matrices A_i and of A = sum A_i.
class ScatterSummary {
 public:
  ScatterSummary(DesignSpec design, std::vector<double> log_det_groups, double log_det_pooled);

  const DesignSpec& design() const { return design_; }
  const std::vector<double>& log_det_groups() const { return log_det_groups_; }
  double log_det_pooled() const { return log_det_pooled_; }

 private:
  DesignSpec design_;
  std::vector<double> log_det_groups_;
  double log_det_pooled_;
};

/// Builds the summary from raw observations, one n_i x p matrix per group.
/// Throws DesignError if the groups disagree on p or some n_i <= p, and
/// NotPositiveDefinite if a scatter matrix is numerically singular.
ScatterSummary summarize(std::span<const Matrix> groups);

/// Same, from precomputed scatter matrices.
ScatterSummary summarize_scatters(const DesignSpec& design, std::span<const Matrix> scatters);

/// Which centering is used by the CLT and ALRT statistics.
enum class MeanVariant {
  Digamma,      ///< mu_n, the exact null mean of -2 log Lambda*
  DigammaFree,  ///< mu_bar_n, closed form valid when p <= delta min n_i
};

struct AsymptoticParams {
  double f = 0.0;
  double rho = 0.0;
  double mu_n = 0.0;
  double sigma2_n = 0.0;
  double mu_bar_n = 0.0;

  double mean(MeanVariant v) const { return v == MeanVariant::Digamma ? mu_n : mu_bar_n; }
};

AsymptoticParams asymptotic_params(const DesignSpec& design);

/// -2 log of the Bartlett-corrected likelihood ratio, evaluated in log space.
double neg2_log_lambda_star(const ScatterSummary& s);

/// log W_n = sum (n_i - 1)/2 log|A_i| - (n - k)/2 log|A|.
double log_w(const ScatterSummary& s);

/// p (sum (n_i - 1) log(n_i - 1) - (n - k) log(n - k)); satisfies
/// -2 log Lambda* = -2 log W_n + lambda_offset.
double lambda_offset(const DesignSpec& design);

/// Degrees of freedom p (p + 1) (k - 1) / 2.
double dof_f(const DesignSpec& design);

/// Box's correction factor rho.
double box_rho(const DesignSpec& design);

/// Null mean of -2 log Lambda* as a digamma sum. Exact, not only asymptotic.
double mu_n(const DesignSpec& design);

/// Asymptotic null variance of -2 log Lambda*. Throws std::logic_error if
/// the formula evaluates to a non-positive number.
double sigma2_n(const DesignSpec& design);

/// Digamma-free approximation of mu_n.
double mu_bar_n(const DesignSpec& design);

/// Adjusted statistic: (x - mu) sqrt(2 f / sigma2) + f, null mean f and
/// variance about 2 f.
double z_alrt(double neg2ll, const AsymptoticParams& params,
              MeanVariant variant = MeanVariant::Digamma);

/// log E[W_n^t] under the null, for t > max_i (p - 1)/(n_i - 1) - 1.
double log_mgf_w(const DesignSpec& design, double t);

struct NullMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Exact null mean and variance of -2 log Lambda*, obtained by
/// differentiating log E[W_n^t] at t = 0 (digamma and trigamma sums). The
/// variance is a finite-sample alternative to sigma2_n.
NullMoments exact_moments(const DesignSpec& design);

}  // namespace covlrt
