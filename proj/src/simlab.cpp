#include "covlrt/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace covlrt {

std::string_view to_string(Scenario scenario) {
  return scenario == Scenario::Null ? "null" : "scaled";
}

double group_scale(Scenario scenario, int index, int k) {
  if (scenario == Scenario::Null) return 1.0;
  return 1.0 + 3.0 * index / static_cast<double>(k);
}

void validate(const SimulationSpec& spec) {
  if (spec.replicates < 1) {
    throw std::invalid_argument("simulation: replicates must be >= 1, got " +
                                std::to_string(spec.replicates));
  }
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw std::invalid_argument("simulation: alpha must lie in (0, 1), got " +
                                std::to_string(spec.alpha));
  }
}

std::vector<Matrix> generate_samples(const DesignSpec& design, Scenario scenario,
                                     RngStream& stream) {
  const int k = design.k();
  const Eigen::Index p = design.p();
  std::vector<Matrix> groups;
  groups.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const double sd = std::sqrt(group_scale(scenario, i, k));
    Matrix x(design.group_size(i), p);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < p; ++c) x(r, c) = sd * stream.next_normal();
    }
    groups.push_back(std::move(x));
  }
  return groups;
}

ScatterSummary generate_replicate(const DesignSpec& design, Scenario scenario, RngStream& stream) {
  const auto groups = generate_samples(design, scenario, stream);
  std::vector<Matrix> scatters;
  scatters.reserve(groups.size());
  for (const Matrix& g : groups) scatters.push_back(scatter(g));
  return summarize_scatters(design, scatters);
}

SimulationReport run_study(const SimulationSpec& spec, const RunOptions& options) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();
  const Calibration calib(spec.design, spec.alpha);

  std::array<TestMethod, 3> methods{};
  std::array<double, 3> critical{};
  for (std::size_t m = 0; m < kAllTests.size(); ++m) {
    methods[m] = TestMethod{kAllTests[m], spec.mean_variant};
    critical[m] = calib.critical_value(methods[m]);
  }

  const auto total = static_cast<std::size_t>(spec.replicates);
  std::vector<std::uint8_t> flags(total, 0);
  std::vector<ReplicateStatistics> stats;
  if (spec.emit_statistics) stats.resize(total);

  std::atomic<long> next{0};
  std::mutex error_mutex;
  long failed_index = std::numeric_limits<long>::max();
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const long r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= spec.replicates) return;
      try {
        RngStream stream(spec.master_seed, static_cast<std::uint64_t>(r));
        const double raw = neg2_log_lambda_star(generate_replicate(spec.design, spec.scenario, stream));
        std::uint8_t bits = 0;
        ReplicateStatistics rs{r, raw, {}};
        for (std::size_t m = 0; m < methods.size(); ++m) {
          rs.standardized[m] = calib.standardize(methods[m], raw);
          if (rs.standardized[m] > critical[m]) bits |= static_cast<std::uint8_t>(1u << m);
        }
        flags[static_cast<std::size_t>(r)] = bits;
        if (spec.emit_statistics) stats[static_cast<std::size_t>(r)] = rs;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (r < failed_index) {
          failed_index = r;
          failure = e.what();
        }
        next.store(spec.replicates);
        return;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::min<long>(spec.replicates, 1024))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!failure.empty()) {
    throw std::runtime_error("simulation: replicate " + std::to_string(failed_index) +
                             " failed: " + failure);
  }

  SimulationReport report{spec, {}, {}, {}, 0.0, std::string(RngStream::kAlgorithm), std::nullopt};
  for (std::uint8_t bits : flags) {
    for (std::size_t m = 0; m < 3; ++m) report.rejections[m] += (bits >> m) & 1u;
  }
  const double reps = static_cast<double>(spec.replicates);
  for (std::size_t m = 0; m < 3; ++m) {
    const double rate = report.rejections[m] / reps;
    report.rejection_rate[m] = rate;
    report.std_error[m] = std::sqrt(rate * (1.0 - rate) / reps);
  }
  if (spec.emit_statistics) report.statistics = std::move(stats);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Histogram histogram_data(const SimulationReport& report, TestTag method, int bins) {
  if (!report.statistics || report.statistics->empty()) {
    throw std::logic_error("histogram: report has no per-replicate statistics");
  }
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  const auto m = static_cast<std::size_t>(method);
  const auto& stats = *report.statistics;
  double lo = stats.front().standardized[m];
  double hi = lo;
  for (const auto& s : stats) {
    lo = std::min(lo, s.standardized[m]);
    hi = std::max(hi, s.standardized[m]);
  }
  const double count = static_cast<double>(stats.size());
  Histogram h;
  if (hi == lo) {
    h.bin_width = 1.0;
    h.centers = {lo};
    h.density = {1.0};
    return h;
  }
  h.bin_width = (hi - lo) / bins;
  h.centers.resize(static_cast<std::size_t>(bins));
  h.density.assign(static_cast<std::size_t>(bins), 0.0);
  for (int b = 0; b < bins; ++b) h.centers[static_cast<std::size_t>(b)] = lo + (b + 0.5) * h.bin_width;
  for (const auto& s : stats) {
    const auto b = std::min<long>(bins - 1, static_cast<long>((s.standardized[m] - lo) / h.bin_width));
    h.density[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& d : h.density) d /= count * h.bin_width;
  return h;
}

}  // namespace covlrt
