#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "coassim/config.hpp"
#include "coassim/eval.hpp"
#include "coassim/sampler.hpp"

namespace coassim {

inline constexpr const char* kVersion = "co-assim 0.1.0";

class missing_artifact_error : public std::runtime_error {
 public:
  explicit missing_artifact_error(const std::string& what)
      : std::runtime_error(what) {}
};

class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Stable id of the scenario a run belongs to (config echo + seed).
std::string scenario_id(const RunConfig& cfg);

// simulate: winds, truth, clouds into `out`.
void stage_simulate(const RunConfig& cfg, const std::filesystem::path& out);

// observe: reads truth + clouds from `scenario_dir`, writes observations.
void stage_observe(const RunConfig& cfg,
                   const std::filesystem::path& scenario_dir);

// fit-bhm: reads observations + winds, runs `n_chains` Gibbs chains with
// disjoint seed streams, writes posterior field + chains + diagnostics.
PosteriorSummary stage_fit_bhm(const RunConfig& cfg,
                               const std::filesystem::path& scenario_dir,
                               const std::filesystem::path& out,
                               int n_chains, bool coupled);

// fit-kriging: independent per-(level,time) Matern-2.5 fits and predictions,
// same field CSV schema as the sampler.
void stage_fit_kriging(const RunConfig& cfg,
                       const std::filesystem::path& scenario_dir,
                       const std::filesystem::path& out);

// evaluate: RMSE tables and series for any set of method runs against the
// scenario truth.
EvalReport stage_evaluate(const std::filesystem::path& scenario_dir,
                          const std::vector<std::filesystem::path>& run_dirs,
                          int level, const std::filesystem::path& out);

}  // namespace coassim
