#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coassim/scenario.hpp"

namespace coassim {

enum class Subset { kAll, kObserved, kUnobserved };

// RMSE over one (level, time) slice, restricted to a cloud-mask subset.
// Divides by the subset size; throws on an empty subset.
double rmse(const std::vector<double>& xhat, const std::vector<double>& xtrue,
            const CloudMask& mask, int k, Subset subset);

struct ResidualField {
  std::vector<double> value;      // |x - xhat| / sd
  std::vector<bool> flagged;      // zero-sd cells, excluded from aggregates
  double mean = 0;                // over unflagged cells
};

ResidualField standardized_residuals(const std::vector<double>& xhat,
                                     const std::vector<double>& sdhat,
                                     const std::vector<double>& xtrue);

struct MethodRun {
  std::string name;
  // mean[k][l][i]; sd may be empty (kriging reports its own variance field,
  // converted by the caller, or nothing).
  std::vector<std::vector<std::vector<double>>> mean;
  std::vector<std::vector<std::vector<double>>> sd;
};

struct MethodReport {
  std::string name;
  double rmse_all = 0, rmse_unobserved = 0;    // time-averaged, chosen level
  std::vector<double> rmse_series_all;         // per time step
  std::vector<double> rmse_series_unobserved;  // NaN where subset is empty
  int n_negative_estimates = 0;                // '<' convention count
};

struct EvalReport {
  int level = 0;  // 0-based index of the reported level
  std::vector<MethodReport> methods;
};

EvalReport build_report(const std::vector<MethodRun>& runs,
                        const TruthField& truth, const CloudMask& mask,
                        int level);

}  // namespace coassim
