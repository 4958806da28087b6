#pragma once

#include <array>
#include <string_view>

#include "covlrt/lrt.hpp"

namespace covlrt {

enum class TestTag {
  ClassicChisq,  ///< -2 rho log Lambda* against chi^2_f
  CltNormal,     ///< (-2 log Lambda* - mu) / sigma against N(0, 1)
  AlrtChisq,     ///< adjusted statistic Z_n against chi^2_f
};

inline constexpr std::array<TestTag, 3> kAllTests = {TestTag::ClassicChisq, TestTag::CltNormal,
                                                     TestTag::AlrtChisq};

/// mean_variant has no effect on ClassicChisq.
struct TestMethod {
  TestTag tag = TestTag::AlrtChisq;
  MeanVariant mean_variant = MeanVariant::Digamma;
};

std::string_view to_string(TestTag tag);
std::string_view to_string(MeanVariant variant);

struct TestOutcome {
  TestMethod method;
  double raw_statistic = 0.0;  ///< -2 log Lambda*
  double standardized = 0.0;
  double critical_value = 0.0;
  double p_value = 1.0;  ///< upper tail
  bool reject = false;   ///< standardized > critical_value, strictly
  AsymptoticParams params;
};

/// Everything a decision needs that does not depend on the data: asymptotic
/// parameters and the chi-square / normal critical values at level alpha.
/// Build once per design and reuse across datasets or replicates.
class Calibration {
 public:
  Calibration(const DesignSpec& design, double alpha);

  const DesignSpec& design() const { return design_; }
  double alpha() const { return alpha_; }
  const AsymptoticParams& params() const { return params_; }
  double chisq_critical() const { return chisq_critical_; }
  double normal_critical() const { return normal_critical_; }

  double standardize(const TestMethod& method, double raw) const;
  double critical_value(const TestMethod& method) const;
  double p_value(const TestMethod& method, double standardized) const;

  /// Applies one rule to a raw -2 log Lambda* value. The raw value is used
  /// as given, never clamped.
  TestOutcome evaluate(const TestMethod& method, double raw) const;

  /// The rule's rejection region expressed as {raw > cutoff}.
  double raw_cutoff(const TestMethod& method) const;

 private:
  DesignSpec design_;
  double alpha_;
  AsymptoticParams params_;
  double chisq_critical_;
  double normal_critical_;
};

TestOutcome classic_test(const ScatterSummary& s, double alpha);
TestOutcome clt_test(const ScatterSummary& s, double alpha,
                     MeanVariant variant = MeanVariant::Digamma);
TestOutcome alrt_test(const ScatterSummary& s, double alpha,
                      MeanVariant variant = MeanVariant::Digamma);

}  // namespace covlrt
