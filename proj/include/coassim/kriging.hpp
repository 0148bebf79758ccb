#pragma once

#include <vector>

#include "coassim/grid.hpp"
#include "coassim/scenario.hpp"

namespace coassim {

struct MaternParams {
  double sigma2 = 1.0;  // ppb^2 marginal variance
  double rho = 1.0;     // meters range
  double nugget = 0.0;  // ppb^2, fixed from the observation noise
  // smoothness is fixed at nu = 5/2
};

// Matern nu=5/2: sigma2 (1 + sqrt5 d/rho + 5 d^2 / 3 rho^2) exp(-sqrt5 d/rho).
double matern_cov(double d, const MaternParams& p);

// Great-circle distance between two cell centers, meters.
double cell_distance(const Grid3D& g, int i, int j);

struct MleOptions {
  double log_sigma2_min = -6.0, log_sigma2_max = 12.0;
  double log_rho_min = 0, log_rho_max = 0;  // 0,0 = default [10 km, 5000 km]
  int multistarts = 5;
  double tol = 1e-6;  // log-likelihood tolerance
};

struct MleFit {
  MaternParams params;
  double loglik = 0;
  bool degenerate = false;  // variance pinned at a search bound
};

// Gaussian ML over (log sigma2, log rho) with the constant mean profiled out
// by generalized least squares. The nugget stays fixed.
MleFit mle_fit(const Grid3D& g, const std::vector<Observation>& snapshot,
               double nugget, const MleOptions& opts = {},
               std::uint64_t seed = 0);

struct KrigeResult {
  std::vector<double> mean, variance;  // per interior cell
};

// Ordinary kriging (unknown constant mean) onto all interior cells.
KrigeResult krige_predict(const Grid3D& g,
                          const std::vector<Observation>& snapshot,
                          const MaternParams& p);

}  // namespace coassim
