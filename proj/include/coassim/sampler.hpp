#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "coassim/dynamics.hpp"
#include "coassim/grid.hpp"
#include "coassim/scenario.hpp"

namespace coassim {

// One linear-Gaussian likelihood term: c = a * theta + b + N(0, v).
struct GaussianFactor {
  double a = 0, b = 0, c = 0, v = 1;
};

struct GaussianMoments {
  double mean = 0, var = 0;
};

// Conjugate fusion of scalar Gaussian factors with a Gaussian prior.
GaussianMoments gaussian_fuse(std::span<const GaussianFactor> factors,
                              double prior_mean, double prior_var);

// Shape-rate inverse gamma, density ~ x^-(q+1) exp(-r/x).
struct IGParams {
  double q = 0, r = 0;
};
IGParams ig_posterior(double q, double r, std::size_t n_residuals, double ssr);
double draw_inverse_gamma(std::mt19937_64& rng, IGParams p);

struct PriorConfig {
  double m0 = 1.0, sigma2_m = 1e-3;
  double f0 = 0.0, sigma2_f = 1e-3;
  double q_eta = 2.8, r_eta = 0.28;
  double q_B = 2.8, r_B = 0.28;
};

struct ModelParams {
  std::vector<double> m, f;  // per level, f[0] == 0
  std::vector<double> sigma2_eta, sigma2_B;
};

struct SamplerConfig {
  int n_iter = 6000;
  int burn_in = 150;
  int thin = 10;
  std::uint64_t seed = 0;
  bool coupled = true;  // false: f forced to 0 at every level
  AdvectionSign advection_sign = AdvectionSign::kPaper;
  // Sampler-facing observation noise: max(plugin_frac * y, plugin_floor).
  // With plugin_noise off, the per-datum sigma from the observation set is
  // used as-is.
  bool plugin_noise = true;
  double plugin_frac = 0.10;
  double plugin_floor = 1.0;  // ppb
  double init_corr_range_cells = 5.0;
  double clim_sd_mult = 3.0;
  double boundary_init_sd_mult = 10.0;
};

// Fixed per-level initial-slice priors (the CO climatology stand-in).
struct Climatology {
  std::vector<double> mean;         // ppb
  std::vector<double> sd;           // ppb, for X at k = 0
  std::vector<double> boundary_sd;  // ppb, for X^B at k = 0
  std::vector<double> obs_sd;       // per-level spread used by init draws
};

// Everything fixed during one MCMC run: grid, propagators, observation
// incidence, priors.
struct ModelSetup {
  Grid3D grid;
  int n_steps = 0;
  bool coupled = true;
  PriorConfig priors;
  Climatology clim;
  std::vector<std::vector<Propagator>> props;  // [k][l], k = 0..T-2
  std::vector<double> obs_y;    // [k][l][i] flattened; valid iff obs_var > 0
  std::vector<double> obs_var;  // <= 0 marks an unobserved cell

  int n_cells() const { return grid.n_cells(); }
  int n_ghost() const { return grid.n_ghost(); }
  int n_levels() const { return grid.n_levels(); }
  std::size_t sidx(int k, int l, int i) const {
    return (static_cast<std::size_t>(k) * n_levels() + l) * n_cells() + i;
  }
  std::size_t bidx(int k, int l, int b) const {
    return (static_cast<std::size_t>(k) * n_levels() + l) * n_ghost() + b;
  }
};

ModelSetup build_setup(const Grid3D& g, const WindField& w,
                       const ObservationSet& obs, const PriorConfig& priors,
                       const SamplerConfig& cfg);

struct ChainState {
  std::vector<double> x;   // [k][l][i]
  std::vector<double> xb;  // [k][l][b]
  ModelParams params;
  long iteration = 0;
  std::mt19937_64 rng;
};

ChainState init_chain(const ModelSetup& setup, const SamplerConfig& cfg);

struct ParamChains {
  // chains.m[l][j] = j-th retained draw of m(l); same layout for the rest.
  std::vector<std::vector<double>> m, f, sigma2_eta, sigma2_B;
};

struct Diagnostics {
  std::vector<double> param_mean, param_sd, param_ess;  // flat over chains
  std::vector<std::string> param_name;
};

struct PosteriorSummary {
  int n_retained = 0;
  std::vector<double> mean, sd;  // [k][l][i], state cells only
  ParamChains chains;
  Diagnostics diag;
};

class GibbsSampler {
 public:
  GibbsSampler(const ModelSetup& setup, const SamplerConfig& cfg)
      : setup_(setup), cfg_(cfg) {}

  // Exact scalar full conditional moments, given everything else fixed.
  GaussianMoments state_conditional(const ChainState& cs, int k, int l,
                                    int i) const;
  GaussianMoments boundary_conditional(const ChainState& cs, int k, int l,
                                       int b) const;
  GaussianMoments m_conditional(const ChainState& cs, int l) const;
  GaussianMoments f_conditional(const ChainState& cs, int l) const;
  // Joint bivariate conditional of (m(l), f(l)); the two coefficients are
  // near-collinear, so blocking them keeps the chain mixing.
  struct MFMoments {
    double mean_m, mean_f;
    double var_m, var_f, cov;
  };
  MFMoments mf_conditional(const ChainState& cs, int l) const;
  IGParams sigma2_eta_conditional(const ChainState& cs, int l) const;
  IGParams sigma2_B_conditional(const ChainState& cs, int l) const;

  // One full sweep: all state cells, all ghost cells, then the parameters.
  void sweep(ChainState& cs) const;

  // Generative-model simulation with the chain's parameters (initial slices
  // from the climatology priors, then the stochastic transitions). Used by
  // joint-distribution checks.
  void forward_simulate(ChainState& cs) const;
  ModelParams draw_params_from_prior(std::mt19937_64& rng) const;

  // Conditional mean of the production equation for X_{k+1}(l) at row j,
  // evaluated on the current state (k in 0..T-2).
  double row_mean(const ChainState& cs, int k, int l, int j) const;

  const ModelSetup& setup() const { return setup_; }

 private:
  const ModelSetup& setup_;
  SamplerConfig cfg_;
};

PosteriorSummary run_gibbs(const ModelSetup& setup, const SamplerConfig& cfg);

// Merge chains run with disjoint seeds; associative, order-independent.
PosteriorSummary merge_summaries(const std::vector<PosteriorSummary>& parts);

// Effective sample size via the initial positive sequence estimator.
double effective_sample_size(std::span<const double> chain);

}  // namespace coassim
