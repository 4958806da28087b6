#include "covlrt/decision.hpp"

#include <cmath>
#include <string>

#include "covlrt/errors.hpp"
#include "covlrt/specfun.hpp"

namespace covlrt {

std::string_view to_string(TestTag tag) {
  switch (tag) {
    case TestTag::ClassicChisq:
      return "chisq";
    case TestTag::CltNormal:
      return "clt";
    case TestTag::AlrtChisq:
      return "alrt";
  }
  return "unknown";
}

std::string_view to_string(MeanVariant variant) {
  return variant == MeanVariant::Digamma ? "digamma" : "digamma-free";
}

Calibration::Calibration(const DesignSpec& design, double alpha)
    : design_(design), alpha_(alpha), params_(asymptotic_params(design)) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  chisq_critical_ = specfun::chisq_quantile(params_.f, alpha);
  normal_critical_ = specfun::normal_quantile(alpha);
}

double Calibration::standardize(const TestMethod& method, double raw) const {
  switch (method.tag) {
    case TestTag::ClassicChisq:
      return params_.rho * raw;
    case TestTag::CltNormal:
      return (raw - params_.mean(method.mean_variant)) / std::sqrt(params_.sigma2_n);
    case TestTag::AlrtChisq:
      return z_alrt(raw, params_, method.mean_variant);
  }
  return raw;
}

double Calibration::critical_value(const TestMethod& method) const {
  return method.tag == TestTag::CltNormal ? normal_critical_ : chisq_critical_;
}

double Calibration::p_value(const TestMethod& method, double standardized) const {
  if (method.tag == TestTag::CltNormal) return specfun::normal_cdf(-standardized);
  return specfun::chisq_sf(params_.f, standardized);
}

TestOutcome Calibration::evaluate(const TestMethod& method, double raw) const {
  TestOutcome out;
  out.method = method;
  out.raw_statistic = raw;
  out.standardized = standardize(method, raw);
  out.critical_value = critical_value(method);
  out.p_value = p_value(method, out.standardized);
  out.reject = out.standardized > out.critical_value;
  out.params = params_;
  return out;
}

double Calibration::raw_cutoff(const TestMethod& method) const {
  const double sigma = std::sqrt(params_.sigma2_n);
  const double mean = params_.mean(method.mean_variant);
  switch (method.tag) {
    case TestTag::ClassicChisq:
      return chisq_critical_ / params_.rho;
    case TestTag::CltNormal:
      return mean + sigma * normal_critical_;
    case TestTag::AlrtChisq:
      return mean + (chisq_critical_ - params_.f) * sigma / std::sqrt(2.0 * params_.f);
  }
  return 0.0;
}

TestOutcome classic_test(const ScatterSummary& s, double alpha) {
  return Calibration(s.design(), alpha)
      .evaluate({TestTag::ClassicChisq, MeanVariant::Digamma}, neg2_log_lambda_star(s));
}

TestOutcome clt_test(const ScatterSummary& s, double alpha, MeanVariant variant) {
  return Calibration(s.design(), alpha)
      .evaluate({TestTag::CltNormal, variant}, neg2_log_lambda_star(s));
}

TestOutcome alrt_test(const ScatterSummary& s, double alpha, MeanVariant variant) {
  return Calibration(s.design(), alpha)
      .evaluate({TestTag::AlrtChisq, variant}, neg2_log_lambda_star(s));
}

}  // namespace covlrt
