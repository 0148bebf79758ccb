#include "coassim/eval.hpp"

#include <cmath>
#include <stdexcept>

namespace coassim {

double rmse(const std::vector<double>& xhat, const std::vector<double>& xtrue,
            const CloudMask& mask, int k, Subset subset) {
  if (xhat.size() != xtrue.size())
    throw std::invalid_argument("rmse: shape mismatch");
  double ss = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    const bool cloudy = mask.cloudy[k][i];
    if (subset == Subset::kObserved && cloudy) continue;
    if (subset == Subset::kUnobserved && !cloudy) continue;
    const double d = xhat[i] - xtrue[i];
    ss += d * d;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("rmse: empty subset");
  return std::sqrt(ss / n);
}

ResidualField standardized_residuals(const std::vector<double>& xhat,
                                     const std::vector<double>& sdhat,
                                     const std::vector<double>& xtrue) {
  if (xhat.size() != sdhat.size() || xhat.size() != xtrue.size())
    throw std::invalid_argument("standardized_residuals: shape mismatch");
  ResidualField out;
  out.value.resize(xhat.size());
  out.flagged.assign(xhat.size(), false);
  double acc = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    if (sdhat[i] <= 0) {
      out.flagged[i] = true;
      out.value[i] = 0;
      continue;
    }
    out.value[i] = std::abs(xtrue[i] - xhat[i]) / sdhat[i];
    acc += out.value[i];
    ++n;
  }
  out.mean = n ? acc / n : 0;
  return out;
}

EvalReport build_report(const std::vector<MethodRun>& runs,
                        const TruthField& truth, const CloudMask& mask,
                        int level) {
  EvalReport rep;
  rep.level = level;
  const int T = truth.n_steps;
  for (const auto& run : runs) {
    if (static_cast<int>(run.mean.size()) != T)
      throw std::invalid_argument("build_report: run '" + run.name +
                                  "' does not match the truth time span");
    MethodReport mr;
    mr.name = run.name;
    double acc_all = 0, acc_un = 0;
    int n_un = 0;
    for (int k = 0; k < T; ++k) {
      const double r_all =
          rmse(run.mean[k][level], truth.x[k][level], mask, k, Subset::kAll);
      mr.rmse_series_all.push_back(r_all);
      acc_all += r_all;
      bool any_cloudy = false;
      for (int i = 0; i < static_cast<int>(mask.cloudy[k].size()); ++i)
        any_cloudy |= bool(mask.cloudy[k][i]);
      if (any_cloudy) {
        const double r_un = rmse(run.mean[k][level], truth.x[k][level], mask,
                                 k, Subset::kUnobserved);
        mr.rmse_series_unobserved.push_back(r_un);
        acc_un += r_un;
        ++n_un;
      } else {
        mr.rmse_series_unobserved.push_back(std::nan(""));
      }
      for (int l = 0; l < static_cast<int>(run.mean[k].size()); ++l)
        for (double v : run.mean[k][l])
          if (v < 0) ++mr.n_negative_estimates;
    }
    mr.rmse_all = acc_all / T;
    mr.rmse_unobserved = n_un ? acc_un / n_un : std::nan("");
    rep.methods.push_back(std::move(mr));
  }
  return rep;
}

}  // namespace coassim
