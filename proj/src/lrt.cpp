#include "covlrt/lrt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "covlrt/errors.hpp"
#include "covlrt/specfun.hpp"

namespace covlrt {
namespace {

// Neumaier summation over terms sorted by decreasing magnitude. The digamma
// sums in mu_n cancel down from ~n p log n to ~p^2 k.
double compensated_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  double sum = 0.0;
  double carry = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      carry += (sum - next) + t;
    } else {
      carry += (t - next) + sum;
    }
    sum = next;
  }
  return sum + carry;
}

double pooled_df(const DesignSpec& d) { return static_cast<double>(d.total() - d.k()); }

}  // namespace

DesignSpec::DesignSpec(int p, std::vector<int> group_sizes)
    : p_(p), group_sizes_(std::move(group_sizes)) {
  if (p_ < 1) throw DesignError("design: dimension p must be >= 1, got " + std::to_string(p_));
  if (group_sizes_.size() < 2) {
    throw DesignError("design: need at least k = 2 groups, got " +
                      std::to_string(group_sizes_.size()));
  }
  min_size_ = group_sizes_.front();
  for (std::size_t i = 0; i < group_sizes_.size(); ++i) {
    const int ni = group_sizes_[i];
    if (ni <= p_) {
      throw DesignError("design: group " + std::to_string(i + 1) + " has n_i = " +
                        std::to_string(ni) + " but p < n_i is required (p = " +
                        std::to_string(p_) + ")");
    }
    total_ += ni;
    min_size_ = std::min(min_size_, ni);
  }
}

DesignSpec DesignSpec::balanced(int p, int k, int n) {
  if (k < 0) throw DesignError("design: k must be >= 2");
  return DesignSpec(p, std::vector<int>(static_cast<std::size_t>(k), n));
}

ScatterSummary::ScatterSummary(DesignSpec design, std::vector<double> log_det_groups,
                               double log_det_pooled)
    : design_(std::move(design)),
      log_det_groups_(std::move(log_det_groups)),
      log_det_pooled_(log_det_pooled) {
  if (log_det_groups_.size() != static_cast<std::size_t>(design_.k())) {
    throw ShapeError("scatter summary: expected " + std::to_string(design_.k()) +
                     " group log-determinants, got " + std::to_string(log_det_groups_.size()));
  }
  const bool finite = std::isfinite(log_det_pooled_) &&
                      std::all_of(log_det_groups_.begin(), log_det_groups_.end(),
                                  [](double v) { return std::isfinite(v); });
  if (!finite) throw ShapeError("scatter summary: log-determinants must be finite");
}

ScatterSummary summarize_scatters(const DesignSpec& design, std::span<const Matrix> scatters) {
  if (scatters.size() != static_cast<std::size_t>(design.k())) {
    throw ShapeError("summarize: scatter count does not match design");
  }
  const Eigen::Index p = design.p();
  Matrix pooled = Matrix::Zero(p, p);
  std::vector<double> log_dets;
  log_dets.reserve(scatters.size());
  for (const Matrix& a : scatters) {
    if (a.rows() != p || a.cols() != p) throw ShapeError("summarize: scatter has wrong shape");
    log_dets.push_back(log_det_pd(a));
    pooled += a;
  }
  return ScatterSummary(design, std::move(log_dets), log_det_pd(pooled));
}

ScatterSummary summarize(std::span<const Matrix> groups) {
  if (groups.size() < 2) throw DesignError("summarize: need at least k = 2 groups");
  const Eigen::Index p = groups.front().cols();
  std::vector<int> sizes;
  std::vector<Matrix> scatters;
  sizes.reserve(groups.size());
  scatters.reserve(groups.size());
  for (const Matrix& g : groups) {
    if (g.cols() != p) throw DesignError("summarize: groups disagree on dimension p");
    sizes.push_back(static_cast<int>(g.rows()));
  }
  DesignSpec design(static_cast<int>(p), std::move(sizes));
  for (const Matrix& g : groups) scatters.push_back(scatter(g));
  return summarize_scatters(design, scatters);
}

double neg2_log_lambda_star(const ScatterSummary& s) {
  const DesignSpec& d = s.design();
  const double p = d.p();
  const double nk = pooled_df(d);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(d.k()) + 1);
  // (n-k) log|A/(n-k)| - sum (n_i-1) log|A_i/(n_i-1)|
  terms.push_back(nk * (s.log_det_pooled() - p * std::log(nk)));
  for (int i = 0; i < d.k(); ++i) {
    const double m = d.group_size(i) - 1.0;
    terms.push_back(-m * (s.log_det_groups()[static_cast<std::size_t>(i)] - p * std::log(m)));
  }
  return compensated_sum(std::move(terms));
}

double log_w(const ScatterSummary& s) {
  const DesignSpec& d = s.design();
  std::vector<double> terms;
  terms.push_back(-0.5 * pooled_df(d) * s.log_det_pooled());
  for (int i = 0; i < d.k(); ++i) {
    terms.push_back(0.5 * (d.group_size(i) - 1.0) * s.log_det_groups()[static_cast<std::size_t>(i)]);
  }
  return compensated_sum(std::move(terms));
}

double lambda_offset(const DesignSpec& d) {
  const double nk = pooled_df(d);
  std::vector<double> terms;
  terms.push_back(-d.p() * nk * std::log(nk));
  for (int n : d.group_sizes()) terms.push_back(d.p() * (n - 1.0) * std::log(n - 1.0));
  return compensated_sum(std::move(terms));
}

double dof_f(const DesignSpec& d) {
  const double p = d.p();
  return 0.5 * p * (p + 1.0) * (d.k() - 1.0);
}

double box_rho(const DesignSpec& d) {
  const double p = d.p();
  const double k = d.k();
  const double nk = pooled_df(d);
  double ratio_sum = 0.0;
  for (int n : d.group_sizes()) ratio_sum += nk / (n - 1.0);
  return 1.0 - (2.0 * p * p + 3.0 * p - 1.0) / (6.0 * (p + 1.0) * (k - 1.0) * nk) * (ratio_sum - 1.0);
}

double mu_n(const DesignSpec& d) {
  const int p = d.p();
  const double nk = pooled_df(d);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(p) * (static_cast<std::size_t>(d.k()) + 1) + d.k() + 1);
  for (int j = 1; j <= p; ++j) terms.push_back(nk * specfun::digamma(0.5 * (nk + 1.0 - j)));
  for (int n : d.group_sizes()) {
    const double m = n - 1.0;
    for (int j = 1; j <= p; ++j) terms.push_back(-m * specfun::digamma(0.5 * (n - j)));
    terms.push_back(p * m * std::log(m));
  }
  terms.push_back(-p * nk * std::log(nk));
  return compensated_sum(std::move(terms));
}

double sigma2_n(const DesignSpec& d) {
  const double p = d.p();
  const double nk = pooled_df(d);
  std::vector<double> terms;
  for (int n : d.group_sizes()) {
    const double m = n - 1.0;
    terms.push_back(m * m * specfun::xi(p / n));
  }
  terms.push_back(-nk * nk * specfun::xi(p / (nk + 1.0)));
  terms.push_back(p * (d.k() - 1.0));
  const double v = compensated_sum(std::move(terms));
  if (!(v > 0.0)) {
    throw std::logic_error("sigma2_n: variance evaluated to " + std::to_string(v));
  }
  return v;
}

double mu_bar_n(const DesignSpec& d) {
  const double p = d.p();
  const double nk = pooled_df(d);
  std::vector<double> terms;
  terms.push_back(nk * (p - nk + 0.5) * std::log1p(-p / (nk + 1.0)));
  for (int n : d.group_sizes()) {
    terms.push_back(-(n - 1.0) * (p - n + 1.5) * std::log1p(-p / n));
  }
  terms.push_back(-p * (d.k() - 1.0));
  return compensated_sum(std::move(terms));
}

AsymptoticParams asymptotic_params(const DesignSpec& d) {
  return AsymptoticParams{dof_f(d), box_rho(d), mu_n(d), sigma2_n(d), mu_bar_n(d)};
}

double z_alrt(double neg2ll, const AsymptoticParams& params, MeanVariant variant) {
  const double scale = std::sqrt(2.0 * params.f / params.sigma2_n);
  return neg2ll * scale + params.f - params.mean(variant) * scale;
}

double log_mgf_w(const DesignSpec& d, double t) {
  const int p = d.p();
  double bound = -1.0;
  for (int n : d.group_sizes()) bound = std::max(bound, (p - 1.0) / (n - 1.0) - 1.0);
  if (!(t > bound) || !std::isfinite(t)) {
    throw DomainError("log_mgf_w: t must exceed " + std::to_string(bound) + ", got " +
                      std::to_string(t));
  }
  if (t == 0.0) return 0.0;
  const double nk = pooled_df(d);
  std::vector<double> terms;
  terms.push_back(specfun::ln_multigamma(p, 0.5 * nk));
  terms.push_back(-specfun::ln_multigamma(p, 0.5 * nk * (1.0 + t)));
  for (int n : d.group_sizes()) {
    const double m = n - 1.0;
    terms.push_back(specfun::ln_multigamma(p, 0.5 * m * (1.0 + t)));
    terms.push_back(-specfun::ln_multigamma(p, 0.5 * m));
  }
  return compensated_sum(std::move(terms));
}

NullMoments exact_moments(const DesignSpec& d) {
  const int p = d.p();
  const double nk = pooled_df(d);
  std::vector<double> terms;
  for (int n : d.group_sizes()) {
    const double m2 = (n - 1.0) * (n - 1.0);
    for (int j = 1; j <= p; ++j) terms.push_back(m2 * specfun::trigamma(0.5 * (n - j)));
  }
  for (int j = 1; j <= p; ++j) terms.push_back(-nk * nk * specfun::trigamma(0.5 * (nk + 1.0 - j)));
  return NullMoments{mu_n(d), compensated_sum(std::move(terms))};
}

}  // namespace covlrt
