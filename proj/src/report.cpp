#include "covlrt/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "covlrt/rng.hpp"

namespace covlrt {
namespace {

using json = nlohmann::ordered_json;

json design_json(const DesignSpec& d) {
  return json{{"p", d.p()}, {"k", d.k()}, {"group_sizes", d.group_sizes()}};
}

json params_json(const AsymptoticParams& a) {
  return json{{"f", a.f},
              {"rho", a.rho},
              {"mu_n", a.mu_n},
              {"sigma2_n", a.sigma2_n},
              {"mu_bar_n", a.mu_bar_n}};
}

json outcome_json(const TestOutcome& o) {
  return json{{"method", to_string(o.method.tag)},
              {"mean_variant", to_string(o.method.mean_variant)},
              {"raw_statistic", o.raw_statistic},
              {"standardized", o.standardized},
              {"critical_value", o.critical_value},
              {"p_value", o.p_value},
              {"reject", o.reject}};
}

json header(const char* command) {
  return json{{"version", kVersion},
              {"schema", kReportSchema},
              {"command", command},
              {"rng_algorithm", std::string(RngStream::kAlgorithm)}};
}

void put_number(std::ostream& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  out.write(buf.data(), res.ptr - buf.data());
}

void put_integer(std::ostream& out, long v) {
  std::array<char, 24> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.write(buf.data(), res.ptr - buf.data());
}

}  // namespace

json test_report(const TestRequest& request, const std::vector<std::string>& labels,
                 const ScatterSummary& summary, const std::vector<TestOutcome>& outcomes) {
  json methods = json::array();
  for (const auto& m : request.methods) {
    methods.push_back(json{{"method", to_string(m.tag)}, {"mean_variant", to_string(m.mean_variant)}});
  }
  json report = header("test");
  report["input"] = json{{"path", request.input_path},
                         {"alpha", request.alpha},
                         {"delimiter", std::string(1, request.delimiter)},
                         {"methods", methods}};
  report["design"] = design_json(summary.design());
  report["design"]["groups"] = labels;
  report["scatter"] = json{{"log_det_groups", summary.log_det_groups()},
                           {"log_det_pooled", summary.log_det_pooled()}};
  const AsymptoticParams params = asymptotic_params(summary.design());
  report["params"] = params_json(params);
  report["params"]["exact_variance"] = exact_moments(summary.design()).variance;
  json results = json::array();
  for (const auto& o : outcomes) results.push_back(outcome_json(o));
  report["outcomes"] = results;
  return report;
}

json params_report(const DesignSpec& design, double alpha) {
  const Calibration calib(design, alpha);
  json report = header("params");
  report["input"] = json{{"alpha", alpha}};
  report["design"] = design_json(design);
  report["params"] = params_json(calib.params());
  report["params"]["exact_variance"] = exact_moments(design).variance;
  json critical = json::object();
  json cutoffs = json::object();
  for (TestTag tag : kAllTests) {
    const TestMethod m{tag, MeanVariant::Digamma};
    critical[std::string(to_string(tag))] = calib.critical_value(m);
    cutoffs[std::string(to_string(tag))] = calib.raw_cutoff(m);
  }
  report["critical_values"] = critical;
  report["raw_cutoffs"] = cutoffs;
  return report;
}

json simulation_report(const SimulationReport& r, int histogram_bins) {
  const SimulationSpec& s = r.spec;
  json report = header("simulate");
  report["rng_algorithm"] = r.rng_algorithm;
  report["input"] = json{{"design", design_json(s.design)},
                         {"scenario", to_string(s.scenario)},
                         {"alpha", s.alpha},
                         {"replicates", s.replicates},
                         {"seed", s.master_seed},
                         {"mean_variant", to_string(s.mean_variant)},
                         {"emit_statistics", s.emit_statistics}};
  report["params"] = params_json(asymptotic_params(s.design));
  json results = json::object();
  for (std::size_t m = 0; m < kAllTests.size(); ++m) {
    results[std::string(to_string(kAllTests[m]))] = json{{"rejections", r.rejections[m]},
                                                         {"rejection_rate", r.rejection_rate[m]},
                                                         {"std_error", r.std_error[m]}};
  }
  report["results"] = results;
  if (r.statistics && histogram_bins > 0) {
    json hists = json::object();
    for (TestTag tag : kAllTests) {
      const Histogram h = histogram_data(r, tag, histogram_bins);
      hists[std::string(to_string(tag))] =
          json{{"bin_width", h.bin_width}, {"centers", h.centers}, {"density", h.density}};
    }
    report["histograms"] = hists;
  }
  report["elapsed_seconds"] = r.elapsed_seconds;
  return report;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void write_statistics(std::ostream& out, const std::vector<ReplicateStatistics>& stats) {
  out << "replicate_index,raw,chisq_std,clt_std,alrt_std\n";
  for (const auto& s : stats) {
    put_integer(out, s.index);
    out << ',';
    put_number(out, s.raw);
    for (double v : s.standardized) {
      out << ',';
      put_number(out, v);
    }
    out << '\n';
  }
}

std::vector<TestTag> parse_methods(const std::string& text) {
  if (text == "all") return {kAllTests.begin(), kAllTests.end()};
  for (TestTag tag : kAllTests) {
    if (text == to_string(tag)) return {tag};
  }
  throw std::invalid_argument("unknown method '" + text + "' (expected chisq, clt, alrt or all)");
}

MeanVariant parse_mean_variant(const std::string& text) {
  if (text == "digamma") return MeanVariant::Digamma;
  if (text == "digamma-free") return MeanVariant::DigammaFree;
  throw std::invalid_argument("unknown mean variant '" + text +
                              "' (expected digamma or digamma-free)");
}

Scenario parse_scenario(const std::string& text) {
  if (text == "null") return Scenario::Null;
  if (text == "scaled") return Scenario::ScaledAlternative;
  throw std::invalid_argument("unknown scenario '" + text + "' (expected null or scaled)");
}

}  // namespace covlrt
