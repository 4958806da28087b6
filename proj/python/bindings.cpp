#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "covlrt/decision.hpp"
#include "covlrt/errors.hpp"
#include "covlrt/lrt.hpp"
#include "covlrt/report.hpp"
#include "covlrt/simlab.hpp"
#include "covlrt/specfun.hpp"

namespace py = pybind11;
using namespace covlrt;

namespace {

ScatterSummary summary_from_arrays(const std::vector<Matrix>& groups) { return summarize(groups); }

py::dict outcome_dict(const TestOutcome& o) {
  py::dict d;
  d["method"] = std::string(to_string(o.method.tag));
  d["mean_variant"] = std::string(to_string(o.method.mean_variant));
  d["raw_statistic"] = o.raw_statistic;
  d["standardized"] = o.standardized;
  d["critical_value"] = o.critical_value;
  d["p_value"] = o.p_value;
  d["reject"] = o.reject;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Likelihood ratio tests for equality of k covariance matrices";
  m.attr("__version__") = kVersion;
  m.attr("rng_algorithm") = std::string(RngStream::kAlgorithm);

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DesignError>(m, "DesignError", PyExc_ValueError);
  py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", PyExc_ArithmeticError);

  auto sf = m.def_submodule("specfun", "Scalar special functions");
  sf.def("ln_gamma", &specfun::ln_gamma, py::arg("x"));
  sf.def("digamma", &specfun::digamma, py::arg("x"));
  sf.def("trigamma", &specfun::trigamma, py::arg("x"));
  sf.def("xi", &specfun::xi, py::arg("x"));
  sf.def("eta", &specfun::eta, py::arg("x"));
  sf.def("ln_multigamma", &specfun::ln_multigamma, py::arg("q"), py::arg("z"));
  sf.def("chisq_cdf", &specfun::chisq_cdf, py::arg("dof"), py::arg("x"));
  sf.def("chisq_sf", &specfun::chisq_sf, py::arg("dof"), py::arg("x"));
  sf.def("chisq_quantile", &specfun::chisq_quantile, py::arg("dof"), py::arg("alpha"));
  sf.def("normal_cdf", &specfun::normal_cdf, py::arg("x"));
  sf.def("normal_quantile", &specfun::normal_quantile, py::arg("alpha"));

  py::enum_<MeanVariant>(m, "MeanVariant")
      .value("Digamma", MeanVariant::Digamma)
      .value("DigammaFree", MeanVariant::DigammaFree);
  py::enum_<Scenario>(m, "Scenario")
      .value("Null", Scenario::Null)
      .value("ScaledAlternative", Scenario::ScaledAlternative);

  py::class_<DesignSpec>(m, "DesignSpec")
      .def(py::init<int, std::vector<int>>(), py::arg("p"), py::arg("group_sizes"))
      .def_static("balanced", &DesignSpec::balanced, py::arg("p"), py::arg("k"), py::arg("n"))
      .def_property_readonly("p", &DesignSpec::p)
      .def_property_readonly("k", &DesignSpec::k)
      .def_property_readonly("group_sizes", &DesignSpec::group_sizes)
      .def("__repr__", [](const DesignSpec& d) {
        return "DesignSpec(p=" + std::to_string(d.p()) + ", k=" + std::to_string(d.k()) + ")";
      });

  py::class_<AsymptoticParams>(m, "AsymptoticParams")
      .def_readonly("f", &AsymptoticParams::f)
      .def_readonly("rho", &AsymptoticParams::rho)
      .def_readonly("mu_n", &AsymptoticParams::mu_n)
      .def_readonly("sigma2_n", &AsymptoticParams::sigma2_n)
      .def_readonly("mu_bar_n", &AsymptoticParams::mu_bar_n);

  py::class_<ScatterSummary>(m, "ScatterSummary")
      .def_property_readonly("design", &ScatterSummary::design)
      .def_property_readonly("log_det_groups", &ScatterSummary::log_det_groups)
      .def_property_readonly("log_det_pooled", &ScatterSummary::log_det_pooled);

  m.def("summarize", &summary_from_arrays, py::arg("groups"),
        "Scatter summary from a list of (n_i, p) observation arrays");
  m.def("asymptotic_params", &asymptotic_params, py::arg("design"));
  m.def("neg2_log_lambda_star", &neg2_log_lambda_star, py::arg("summary"));
  m.def("exact_moments", [](const DesignSpec& d) {
    const NullMoments mo = exact_moments(d);
    return py::make_tuple(mo.mean, mo.variance);
  }, py::arg("design"));
  m.def("log_mgf_w", &log_mgf_w, py::arg("design"), py::arg("t"));

  m.def(
      "test",
      [](const std::vector<Matrix>& groups, double alpha, const std::string& method,
         MeanVariant variant) {
        const ScatterSummary s = summarize(groups);
        const Calibration calib(s.design(), alpha);
        const double raw = neg2_log_lambda_star(s);
        py::list out;
        for (TestTag tag : parse_methods(method)) out.append(outcome_dict(calib.evaluate({tag, variant}, raw)));
        return out;
      },
      py::arg("groups"), py::arg("alpha") = 0.05, py::arg("method") = "all",
      py::arg("mean_variant") = MeanVariant::Digamma,
      "Run the requested tests on a list of (n_i, p) arrays; returns one dict per method");

  m.def(
      "run_study",
      [](const DesignSpec& design, Scenario scenario, double alpha, long replicates,
         std::uint64_t seed, MeanVariant variant, unsigned threads) {
        SimulationSpec spec{design, scenario, alpha, replicates, seed, false, variant};
        std::optional<SimulationReport> result;
        {
          py::gil_scoped_release release;
          result = run_study(spec, RunOptions{threads});
        }
        const SimulationReport& r = *result;
        py::dict rates;
        py::dict errors;
        for (std::size_t i = 0; i < kAllTests.size(); ++i) {
          const std::string key(to_string(kAllTests[i]));
          rates[key.c_str()] = r.rejection_rate[i];
          errors[key.c_str()] = r.std_error[i];
        }
        py::dict out;
        out["rejection_rate"] = rates;
        out["std_error"] = errors;
        out["rng_algorithm"] = r.rng_algorithm;
        out["elapsed_seconds"] = r.elapsed_seconds;
        return out;
      },
      py::arg("design"), py::arg("scenario") = Scenario::Null, py::arg("alpha") = 0.05,
      py::arg("replicates") = 1000, py::arg("seed") = 0,
      py::arg("mean_variant") = MeanVariant::Digamma, py::arg("threads") = 0);
}
