#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "coassim/config.hpp"
#include "coassim/eval.hpp"
#include "coassim/kriging.hpp"
#include "coassim/pipeline.hpp"

namespace py = pybind11;
using namespace coassim;

namespace {

RunConfig make_config(const std::string& config_path, std::uint64_t seed) {
  RunConfig cfg =
      config_path.empty() ? default_config() : load_config(config_path);
  cfg.seed = seed;
  cfg.seed_set = true;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_coassim, m) {
  m.doc() = "CO field interpolation: hierarchical Gibbs sampler, kriging "
            "baseline, and the surrounding scenario pipeline";
  m.attr("__version__") = kVersion;

  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<missing_artifact_error>(m, "MissingArtifactError");
  py::register_exception<numerical_error>(m, "NumericalError");

  m.def("default_config_json",
        [] { return config_to_json(default_config()); },
        "Default scenario configuration as a JSON string.");

  m.def("scenario_id",
        [](const std::string& config_path, std::uint64_t seed) {
          return scenario_id(make_config(config_path, seed));
        },
        py::arg("config_path"), py::arg("seed"));

  m.def("matern_cov",
        [](double d, double sigma2, double rho) {
          return matern_cov(d, {sigma2, rho, 0.0});
        },
        py::arg("d"), py::arg("sigma2"), py::arg("rho"),
        "Matern nu=5/2 covariance at distance d (meters).");

  m.def("simulate",
        [](const std::string& config_path, std::uint64_t seed,
           const std::filesystem::path& out) {
          stage_simulate(make_config(config_path, seed), out);
        },
        py::arg("config_path"), py::arg("seed"), py::arg("out"),
        "Generate winds, truth and cloud masks into `out`.");

  m.def("observe",
        [](const std::string& config_path, std::uint64_t seed,
           const std::filesystem::path& scenario_dir) {
          stage_observe(make_config(config_path, seed), scenario_dir);
        },
        py::arg("config_path"), py::arg("seed"), py::arg("scenario_dir"),
        "Draw noisy cloud-free observations of the stored truth.");

  m.def("fit_bhm",
        [](const std::string& config_path, std::uint64_t seed,
           const std::filesystem::path& scenario_dir,
           const std::filesystem::path& out, int n_chains, bool coupled) {
          const PosteriorSummary s = stage_fit_bhm(
              make_config(config_path, seed), scenario_dir, out, n_chains,
              coupled);
          py::dict d;
          d["n_retained"] = s.n_retained;
          py::dict params;
          for (std::size_t p = 0; p < s.diag.param_name.size(); ++p)
            params[s.diag.param_name[p].c_str()] =
                py::make_tuple(s.diag.param_mean[p], s.diag.param_sd[p],
                               s.diag.param_ess[p]);
          d["params"] = params;
          return d;
        },
        py::arg("config_path"), py::arg("seed"), py::arg("scenario_dir"),
        py::arg("out"), py::arg("n_chains") = 1, py::arg("coupled") = true,
        "Run the Gibbs sampler; returns summary diagnostics.");

  m.def("fit_kriging",
        [](const std::string& config_path, std::uint64_t seed,
           const std::filesystem::path& scenario_dir,
           const std::filesystem::path& out) {
          stage_fit_kriging(make_config(config_path, seed), scenario_dir,
                            out);
        },
        py::arg("config_path"), py::arg("seed"), py::arg("scenario_dir"),
        py::arg("out"));

  m.def("evaluate",
        [](const std::filesystem::path& scenario_dir,
           const std::vector<std::filesystem::path>& run_dirs, int level,
           const std::filesystem::path& out) {
          const EvalReport rep =
              stage_evaluate(scenario_dir, run_dirs, level, out);
          py::dict d;
          for (const auto& meth : rep.methods) {
            py::dict r;
            r["rmse_all"] = meth.rmse_all;
            r["rmse_unobserved"] = meth.rmse_unobserved;
            r["rmse_series_all"] = meth.rmse_series_all;
            r["n_negative_estimates"] = meth.n_negative_estimates;
            d[meth.name.c_str()] = r;
          }
          return d;
        },
        py::arg("scenario_dir"), py::arg("run_dirs"), py::arg("level"),
        py::arg("out"),
        "RMSE report for fitted runs against the stored truth.");
}
