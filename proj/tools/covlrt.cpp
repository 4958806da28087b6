// covlrt: command-line front end for the k-sample covariance equality tests.
//
//   covlrt test --input data.csv [--alpha 0.05] [--method all] [--out report.json]
//   covlrt params --p 5 --n 100 --k 3
//   covlrt simulate --p 5 --k 3 --n 100 --scenario null --replicates 10000 --seed 42

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "covlrt/dataset.hpp"
#include "covlrt/errors.hpp"
#include "covlrt/decision.hpp"
#include "covlrt/lrt.hpp"
#include "covlrt/report.hpp"
#include "covlrt/simlab.hpp"

namespace {

using namespace covlrt;

struct DesignArgs {
  int p = 0;
  int k = 0;
  int n = 0;
  std::vector<int> ni;

  DesignSpec build() const {
    if (!ni.empty()) {
      if (k != 0 && k != static_cast<int>(ni.size())) {
        throw std::invalid_argument("--k disagrees with the number of --ni values");
      }
      return DesignSpec(p, ni);
    }
    if (n == 0) throw std::invalid_argument("give either --n (with --k) or one --ni per group");
    return DesignSpec::balanced(p, k, n);
  }
};

void add_design_options(CLI::App& cmd, DesignArgs& args) {
  cmd.add_option("--p", args.p, "Dimension p")->required();
  cmd.add_option("--k", args.k, "Number of groups k (with --n)");
  cmd.add_option("--n", args.n, "Common group size");
  cmd.add_option("--ni", args.ni, "Size of one group; repeat once per group")->take_all();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

char parse_delimiter(bool tab, const std::string& delimiter) {
  if (tab) return '\t';
  if (delimiter == "\\t" || delimiter == "tab") return '\t';
  if (delimiter.size() != 1) throw std::invalid_argument("--delimiter must be a single character");
  return delimiter[0];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likelihood ratio tests for equality of k covariance matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // test
  auto* test = app.add_subcommand("test", "Run the tests on a grouped dataset");
  std::string input;
  std::string test_out;
  double test_alpha = 0.05;
  std::string method = "all";
  std::string mean_variant = "digamma";
  bool tab = false;
  std::string delimiter = ",";
  test->add_option("--input", input, "Delimited text file; header row, column 1 = group")
      ->required();
  test->add_option("--alpha", test_alpha, "Significance level")->capture_default_str();
  test->add_option("--method", method, "chisq, clt, alrt or all")->capture_default_str();
  test->add_option("--mean-variant", mean_variant, "digamma or digamma-free")
      ->capture_default_str();
  test->add_flag("--tab", tab, "Input is tab separated");
  test->add_option("--delimiter", delimiter, "Field separator")->capture_default_str();
  test->add_option("--out", test_out, "Report path (default stdout)");

  // params
  auto* params = app.add_subcommand("params", "Asymptotic parameters and critical values");
  DesignArgs params_design;
  double params_alpha = 0.05;
  std::string params_out;
  add_design_options(*params, params_design);
  params->add_option("--alpha", params_alpha, "Significance level")->capture_default_str();
  params->add_option("--out", params_out, "Report path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo size / power study");
  DesignArgs sim_design;
  std::string scenario = "null";
  double sim_alpha = 0.05;
  long replicates = 10000;
  std::uint64_t seed = 20240101;
  bool emit_stats = false;
  std::string stats_out;
  int bins = 50;
  unsigned threads = 0;
  std::string sim_variant = "digamma";
  std::string sim_out;
  std::string dump_one;
  add_design_options(*sim, sim_design);
  sim->add_option("--scenario", scenario, "null or scaled")->capture_default_str();
  sim->add_option("--alpha", sim_alpha, "Significance level")->capture_default_str();
  sim->add_option("--replicates", replicates, "Number of replicates")->capture_default_str();
  sim->add_option("--seed", seed, "Master seed")->capture_default_str();
  sim->add_option("--mean-variant", sim_variant, "digamma or digamma-free")->capture_default_str();
  sim->add_flag("--emit-stats", emit_stats, "Write per-replicate statistics and histograms");
  sim->add_option("--stats-out", stats_out, "Statistics CSV path (default <out>.stats.csv)");
  sim->add_option("--bins", bins, "Histogram bins in the report")->capture_default_str();
  sim->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  sim->add_option("--dump-one", dump_one, "Also write replicate 0 as a dataset file");
  sim->add_option("--out", sim_out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*test) {
      TestRequest request;
      request.input_path = input;
      request.alpha = test_alpha;
      request.delimiter = parse_delimiter(tab, delimiter);
      const MeanVariant variant = parse_mean_variant(mean_variant);
      for (TestTag tag : parse_methods(method)) request.methods.push_back({tag, variant});

      const Dataset data = read_dataset(input, request.delimiter);
      ScatterSummary summary = [&] {
        try {
          return summarize(data.groups);
        } catch (const NotPositiveDefinite&) {
          throw std::runtime_error(
              "a scatter matrix is singular; each group needs p < n_i linearly independent "
              "centered observations");
        }
      }();
      const Calibration calib(summary.design(), request.alpha);
      const double raw = neg2_log_lambda_star(summary);
      std::vector<TestOutcome> outcomes;
      for (const auto& m : request.methods) outcomes.push_back(calib.evaluate(m, raw));
      write_text(test_out, dump_report(test_report(request, data.labels, summary, outcomes)));
    } else if (*params) {
      write_text(params_out, dump_report(params_report(params_design.build(), params_alpha)));
    } else if (*sim) {
      SimulationSpec spec{sim_design.build(), parse_scenario(scenario), sim_alpha, replicates,
                          seed, emit_stats, parse_mean_variant(sim_variant)};
      validate(spec);
      if (!dump_one.empty()) {
        RngStream stream(spec.master_seed, 0);
        Dataset data;
        data.groups = generate_samples(spec.design, spec.scenario, stream);
        for (int c = 1; c <= spec.design.p(); ++c) data.feature_names.push_back("x" + std::to_string(c));
        for (int g = 1; g <= spec.design.k(); ++g) data.labels.push_back("g" + std::to_string(g));
        std::ostringstream text;
        write_dataset(text, data);
        write_text(dump_one, text.str());
      }
      const SimulationReport report = run_study(spec, RunOptions{threads});
      write_text(sim_out, dump_report(simulation_report(report, emit_stats ? bins : 0)));
      if (emit_stats) {
        std::string path = stats_out;
        if (path.empty()) path = (sim_out.empty() || sim_out == "-") ? "stats.csv" : sim_out + ".stats.csv";
        std::ostringstream text;
        write_statistics(text, *report.statistics);
        write_text(path, text.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
