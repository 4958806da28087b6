#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "covlrt/dataset.hpp"
#include "covlrt/decision.hpp"
#include "covlrt/simlab.hpp"

namespace covlrt {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

/// Echo of the `test` command inputs written into its report.
struct TestRequest {
  std::string input_path;
  double alpha = 0.05;
  std::vector<TestMethod> methods;
  char delimiter = ',';
};

/// Report of the `test` command. Group labels are listed in the order they
/// first appear in the data, matching log_det_groups.
nlohmann::ordered_json test_report(const TestRequest& request, const std::vector<std::string>& labels,
                           const ScatterSummary& summary, const std::vector<TestOutcome>& outcomes);

/// Asymptotic parameters, exact null moments and critical values for a design.
nlohmann::ordered_json params_report(const DesignSpec& design, double alpha);

/// Report of the `simulate` command. Histograms are included when the
/// report carries statistics and `histogram_bins` > 0.
nlohmann::ordered_json simulation_report(const SimulationReport& report, int histogram_bins);

/// Stable text form: two-space indentation, one key per line in insertion
/// order, trailing newline. Doubles are written in shortest round-trip form, so parsing the
/// text back yields bit-identical values.
std::string dump_report(const nlohmann::ordered_json& report);

/// Per-replicate statistics as CSV:
/// replicate_index,raw,chisq_std,clt_std,alrt_std
void write_statistics(std::ostream& out, const std::vector<ReplicateStatistics>& stats);

/// The following throw std::invalid_argument listing the accepted spellings.
/// "chisq", "clt", "alrt" or "all".
std::vector<TestTag> parse_methods(const std::string& text);
MeanVariant parse_mean_variant(const std::string& text);
Scenario parse_scenario(const std::string& text);

}  // namespace covlrt
