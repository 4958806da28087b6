#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covlrt/decision.hpp"
#include "covlrt/lrt.hpp"
#include "covlrt/rng.hpp"

namespace covlrt {

enum class Scenario {
  Null,               ///< Sigma_i = I_p for every group
  ScaledAlternative,  ///< Sigma_i = (1 + 3 (i - 1) / k) I_p, i = 1..k
};

std::string_view to_string(Scenario scenario);

/// Variance multiplier of group `index` (0-based) under `scenario`.
double group_scale(Scenario scenario, int index, int k);

struct SimulationSpec {
  DesignSpec design;
  Scenario scenario = Scenario::Null;
  double alpha = 0.05;
  long replicates = 10000;
  std::uint64_t master_seed = 0;
  bool emit_statistics = false;
  MeanVariant mean_variant = MeanVariant::Digamma;
};

/// Throws std::invalid_argument on replicates < 1 or alpha outside (0, 1).
void validate(const SimulationSpec& spec);

struct ReplicateStatistics {
  long index = 0;
  double raw = 0.0;
  std::array<double, 3> standardized{};  ///< indexed like kAllTests
};

struct SimulationReport {
  SimulationSpec spec;
  std::array<long, 3> rejections{};
  std::array<double, 3> rejection_rate{};
  std::array<double, 3> std_error{};
  double elapsed_seconds = 0.0;
  std::string rng_algorithm;
  std::optional<std::vector<ReplicateStatistics>> statistics;
};

/// Raw observations for one replicate: k matrices of n_i x p draws from
/// N(0, Sigma_i), filled group by group in row-major order from `stream`.
std::vector<Matrix> generate_samples(const DesignSpec& design, Scenario scenario,
                                     RngStream& stream);

ScatterSummary generate_replicate(const DesignSpec& design, Scenario scenario, RngStream& stream);

struct RunOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Replicate r uses RngStream(master_seed, r), so the report does not depend
/// on the thread count.
SimulationReport run_study(const SimulationSpec& spec, const RunOptions& options = {});

struct Histogram {
  double bin_width = 0.0;
  std::vector<double> centers;
  std::vector<double> density;  ///< sum(density) * bin_width == 1
};

/// Equal-width density histogram of one method's standardized statistics.
/// A constant sample yields one bin of width 1. Throws std::logic_error
/// when the report carries no statistics.
Histogram histogram_data(const SimulationReport& report, TestTag method, int bins);

}  // namespace covlrt
