#include "coassim/sampler.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace coassim {

GaussianMoments gaussian_fuse(std::span<const GaussianFactor> factors,
                              double prior_mean, double prior_var) {
  if (prior_var <= 0)
    throw std::invalid_argument("gaussian_fuse: prior variance must be > 0");
  double prec = 1.0 / prior_var;
  double num = prior_mean / prior_var;
  for (const auto& fct : factors) {
    if (fct.v <= 0)
      throw std::invalid_argument("gaussian_fuse: factor variance must be > 0");
    prec += fct.a * fct.a / fct.v;
    num += fct.a * (fct.c - fct.b) / fct.v;
  }
  return {num / prec, 1.0 / prec};
}

IGParams ig_posterior(double q, double r, std::size_t n_residuals,
                      double ssr) {
  if (!(ssr >= 0) || !std::isfinite(ssr))
    throw std::runtime_error("ig_posterior: non-finite residual sum");
  return {q + 0.5 * static_cast<double>(n_residuals), r + 0.5 * ssr};
}

double draw_inverse_gamma(std::mt19937_64& rng, IGParams p) {
  std::gamma_distribution<double> g(p.q, 1.0 / p.r);
  return 1.0 / g(rng);
}

namespace {

double slice_obs_mean(const ObservationSet& obs, int l, double* out_sd) {
  double s = 0, s2 = 0;
  std::size_t n = 0;
  for (const auto& per_level : obs.obs)
    for (const auto& o : per_level[l]) {
      s += o.value;
      s2 += o.value * o.value;
      ++n;
    }
  if (n == 0) return std::nan("");
  const double mean = s / n;
  if (out_sd)
    *out_sd = n > 1 ? std::sqrt(std::max(0.0, (s2 - n * mean * mean) /
                                                  (double(n) - 1)))
                    : 1.0;
  return mean;
}

}  // namespace

ModelSetup build_setup(const Grid3D& g, const WindField& w,
                       const ObservationSet& obs, const PriorConfig& priors,
                       const SamplerConfig& cfg) {
  ModelSetup s;
  s.grid = g;
  s.n_steps = obs.n_steps;
  s.coupled = cfg.coupled;
  s.priors = priors;
  const int L = g.n_levels(), N = g.n_cells(), T = s.n_steps;
  if (w.n_steps != T)
    throw std::invalid_argument("build_setup: wind/observation length mismatch");

  s.props.resize(T - 1);
  for (int k = 0; k + 1 < T; ++k) {
    s.props[k].reserve(L);
    for (int l = 0; l < L; ++l)
      s.props[k].push_back(build_propagator(g, w, k, l, cfg.advection_sign));
  }

  s.obs_y.assign(static_cast<std::size_t>(T) * L * N, 0.0);
  s.obs_var.assign(s.obs_y.size(), -1.0);
  std::size_t total = 0;
  for (int k = 0; k < T; ++k)
    for (int l = 0; l < L; ++l)
      for (const auto& o : obs.obs[k][l]) {
        const double sd =
            cfg.plugin_noise
                ? std::max(cfg.plugin_frac * o.value, cfg.plugin_floor)
                : o.sigma;
        s.obs_y[s.sidx(k, l, o.cell)] = o.value;
        s.obs_var[s.sidx(k, l, o.cell)] = sd * sd;
        ++total;
      }
  if (total == 0) throw std::invalid_argument("build_setup: no observations");

  // Per-level climatology from the observations; empty levels fall back to
  // the global observation mean.
  double gs = 0;
  std::size_t gn = 0;
  for (const auto& per_level : obs.obs)
    for (const auto& lev : per_level)
      for (const auto& o : lev) gs += o.value, ++gn;
  const double global_mean = gs / gn;
  s.clim.mean.resize(L);
  s.clim.sd.resize(L);
  s.clim.boundary_sd.resize(L);
  s.clim.obs_sd.resize(L);
  for (int l = 0; l < L; ++l) {
    double sd = 1.0;
    double mean = slice_obs_mean(obs, l, &sd);
    if (std::isnan(mean)) mean = global_mean;
    s.clim.mean[l] = mean;
    s.clim.obs_sd[l] = sd;  // init-draw amplitude; may be zero
    s.clim.sd[l] = std::max(cfg.clim_sd_mult * sd, 1e-3);
    s.clim.boundary_sd[l] = std::max(cfg.boundary_init_sd_mult * sd, 1e-3);
  }
  return s;
}

ChainState init_chain(const ModelSetup& setup, const SamplerConfig& cfg) {
  const Grid3D& g = setup.grid;
  const int L = g.n_levels(), N = g.n_cells(), NB = g.n_ghost(),
            T = setup.n_steps;
  ChainState cs;
  cs.rng.seed(cfg.seed);
  cs.x.assign(static_cast<std::size_t>(T) * L * N, 0.0);
  cs.xb.assign(static_cast<std::size_t>(T) * L * NB, 0.0);

  // Square root of the isotropic exponential correlation over the interior,
  // shared across levels and times.
  Eigen::MatrixXd corr(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const CellIndex a = g.unflatten(i), b = g.unflatten(j);
      const double d = std::hypot(double(a.ix - b.ix), double(a.iy - b.iy));
      corr(i, j) = std::exp(-d / cfg.init_corr_range_cells);
    }
  corr.diagonal().array() += 1e-9;
  Eigen::MatrixXd chol = corr.llt().matrixL();

  std::normal_distribution<double> nd;
  Eigen::VectorXd z(N);
  for (int k = 0; k < T; ++k)
    for (int l = 0; l < L; ++l) {
      for (int i = 0; i < N; ++i) z(i) = nd(cs.rng);
      const Eigen::VectorXd dev = chol * z;
      for (int i = 0; i < N; ++i)
        cs.x[setup.sidx(k, l, i)] =
            setup.clim.mean[l] + setup.clim.obs_sd[l] * dev(i);
      for (int b = 0; b < NB; ++b)
        cs.xb[setup.bidx(k, l, b)] =
            setup.clim.mean[l] + setup.clim.obs_sd[l] * nd(cs.rng);
    }

  const PriorConfig& pr = setup.priors;
  cs.params.m.assign(L, pr.m0);
  cs.params.f.assign(L, 0.0);
  if (setup.coupled)
    for (int l = 1; l < L; ++l) cs.params.f[l] = pr.f0;
  cs.params.sigma2_eta.assign(L, pr.r_eta / (pr.q_eta - 1.0));
  cs.params.sigma2_B.assign(L, pr.r_B / (pr.q_B - 1.0));
  return cs;
}

double GibbsSampler::row_mean(const ChainState& cs, int k, int l,
                              int j) const {
  const ModelSetup& s = setup_;
  double acc = cs.params.m[l] * cs.x[s.sidx(k, l, j)];
  if (l > 0 && cs.params.f[l] != 0.0)
    acc += cs.params.f[l] * cs.x[s.sidx(k + 1, l - 1, j)];
  for (const auto& e : s.props[k][l].rows[j])
    acc += e.coef * (e.col.ghost ? cs.xb[s.bidx(k, l, e.col.idx)]
                                 : cs.x[s.sidx(k, l, e.col.idx)]);
  return acc;
}

GaussianMoments GibbsSampler::state_conditional(const ChainState& cs, int k,
                                                int l, int i) const {
  const ModelSetup& s = setup_;
  const int L = s.n_levels(), T = s.n_steps;
  const double theta = cs.x[s.sidx(k, l, i)];
  GaussianFactor fac[8];
  int nf = 0;

  double prior_mean, prior_var;
  if (k == 0) {  // initial-slice climatology
    prior_mean = s.clim.mean[l];
    prior_var = s.clim.sd[l] * s.clim.sd[l];
  } else {  // own production from time k-1
    prior_mean = row_mean(cs, k - 1, l, i);
    prior_var = cs.params.sigma2_eta[l];
  }

  const double ovar = s.obs_var[s.sidx(k, l, i)];
  if (ovar > 0) fac[nf++] = {1.0, 0.0, s.obs_y[s.sidx(k, l, i)], ovar};

  if (k + 1 < T) {
    const double v = cs.params.sigma2_eta[l];
    const Propagator& p = s.props[k][l];
    // Own row: theta enters with the persistence coefficient.
    {
      const double a = cs.params.m[l];
      const double mu = row_mean(cs, k, l, i);
      fac[nf++] = {a, mu - a * theta, cs.x[s.sidx(k + 1, l, i)], v};
    }
    // Neighbor rows: theta enters with the signed advection coefficient the
    // neighbor's row assigns to this cell. Slot pairs: E<->W, N<->S.
    const Neighbors nb = neighbors(s.grid, s.grid.unflatten(i));
    const std::pair<NeighborRef, int> from[4] = {
        {nb.east, 1}, {nb.west, 0}, {nb.north, 3}, {nb.south, 2}};
    for (const auto& [ref, slot] : from) {
      if (ref.ghost) continue;
      const StencilEntry& e = p.rows[ref.idx][slot];
      assert(!e.col.ghost && e.col.idx == i);
      const double mu = row_mean(cs, k, l, ref.idx);
      fac[nf++] = {e.coef, mu - e.coef * theta,
                   cs.x[s.sidx(k + 1, l, ref.idx)], v};
    }
  }

  // Vertical: theta is the forcing input of the level above, same time.
  if (l + 1 < L && k >= 1 && cs.params.f[l + 1] != 0.0) {
    const double a = cs.params.f[l + 1];
    const double mu = row_mean(cs, k - 1, l + 1, i);
    fac[nf++] = {a, mu - a * theta, cs.x[s.sidx(k, l + 1, i)],
                 cs.params.sigma2_eta[l + 1]};
  }

  return gaussian_fuse(std::span(fac, nf), prior_mean, prior_var);
}

GaussianMoments GibbsSampler::boundary_conditional(const ChainState& cs, int k,
                                                   int l, int b) const {
  const ModelSetup& s = setup_;
  const double theta = cs.xb[s.bidx(k, l, b)];
  GaussianFactor fac[3];
  int nf = 0;

  double prior_mean, prior_var;
  if (k == 0) {
    prior_mean = s.clim.mean[l];
    prior_var = s.clim.boundary_sd[l] * s.clim.boundary_sd[l];
  } else {  // random-walk link backward
    prior_mean = cs.xb[s.bidx(k - 1, l, b)];
    prior_var = cs.params.sigma2_B[l];
  }

  if (k + 1 < s.n_steps) {
    // Forward random-walk link.
    fac[nf++] = {1.0, 0.0, cs.xb[s.bidx(k + 1, l, b)], cs.params.sigma2_B[l]};
    // Advection factor through the adjacent interior row, if any (ring
    // corners feed no stencil).
    const int j = ghost_adjacent_interior(s.grid, b);
    if (j >= 0) {
      const double a = s.props[k][l].ghost_coef(j, b);
      if (a != 0.0) {
        const double mu = row_mean(cs, k, l, j);
        fac[nf++] = {a, mu - a * theta, cs.x[s.sidx(k + 1, l, j)],
                     cs.params.sigma2_eta[l]};
      }
    }
  }
  return gaussian_fuse(std::span(fac, nf), prior_mean, prior_var);
}

GaussianMoments GibbsSampler::m_conditional(const ChainState& cs,
                                            int l) const {
  const ModelSetup& s = setup_;
  const double v = cs.params.sigma2_eta[l];
  double prec = 1.0 / s.priors.sigma2_m;
  double num = s.priors.m0 / s.priors.sigma2_m;
  for (int k = 0; k + 1 < s.n_steps; ++k)
    for (int j = 0; j < s.n_cells(); ++j) {
      const double x = cs.x[s.sidx(k, l, j)];
      const double z =
          cs.x[s.sidx(k + 1, l, j)] -
          (row_mean(cs, k, l, j) - cs.params.m[l] * x);
      prec += x * x / v;
      num += x * z / v;
    }
  return {num / prec, 1.0 / prec};
}

GaussianMoments GibbsSampler::f_conditional(const ChainState& cs,
                                            int l) const {
  if (l == 0)
    throw std::invalid_argument("f_conditional: f(1) is identically zero");
  const ModelSetup& s = setup_;
  const double v = cs.params.sigma2_eta[l];
  double prec = 1.0 / s.priors.sigma2_f;
  double num = s.priors.f0 / s.priors.sigma2_f;
  for (int k = 0; k + 1 < s.n_steps; ++k)
    for (int j = 0; j < s.n_cells(); ++j) {
      const double x = cs.x[s.sidx(k + 1, l - 1, j)];
      const double z =
          cs.x[s.sidx(k + 1, l, j)] -
          (row_mean(cs, k, l, j) - cs.params.f[l] * x);
      prec += x * x / v;
      num += x * z / v;
    }
  return {num / prec, 1.0 / prec};
}

GibbsSampler::MFMoments GibbsSampler::mf_conditional(const ChainState& cs,
                                                     int l) const {
  const ModelSetup& s = setup_;
  const double v = cs.params.sigma2_eta[l];
  // Precision matrix P = prior + (1/v) * Gram of the two covariates; the
  // response strips both the m and f terms from the production mean.
  double paa = 1.0 / s.priors.sigma2_m, pbb = 1.0 / s.priors.sigma2_f;
  double pab = 0.0;
  double ha = s.priors.m0 / s.priors.sigma2_m;
  double hb = s.priors.f0 / s.priors.sigma2_f;
  for (int k = 0; k + 1 < s.n_steps; ++k)
    for (int j = 0; j < s.n_cells(); ++j) {
      const double a = cs.x[s.sidx(k, l, j)];
      const double b = cs.x[s.sidx(k + 1, l - 1, j)];
      const double z = cs.x[s.sidx(k + 1, l, j)] -
                       (row_mean(cs, k, l, j) - cs.params.m[l] * a -
                        cs.params.f[l] * b);
      paa += a * a / v;
      pbb += b * b / v;
      pab += a * b / v;
      ha += a * z / v;
      hb += b * z / v;
    }
  const double det = paa * pbb - pab * pab;
  MFMoments mm;
  mm.var_m = pbb / det;
  mm.var_f = paa / det;
  mm.cov = -pab / det;
  mm.mean_m = mm.var_m * ha + mm.cov * hb;
  mm.mean_f = mm.cov * ha + mm.var_f * hb;
  return mm;
}

IGParams GibbsSampler::sigma2_eta_conditional(const ChainState& cs,
                                              int l) const {
  const ModelSetup& s = setup_;
  double ssr = 0;
  std::size_t n = 0;
  for (int k = 0; k + 1 < s.n_steps; ++k)
    for (int j = 0; j < s.n_cells(); ++j) {
      const double r = cs.x[s.sidx(k + 1, l, j)] - row_mean(cs, k, l, j);
      ssr += r * r;
      ++n;
    }
  return ig_posterior(s.priors.q_eta, s.priors.r_eta, n, ssr);
}

IGParams GibbsSampler::sigma2_B_conditional(const ChainState& cs,
                                            int l) const {
  const ModelSetup& s = setup_;
  double ssr = 0;
  std::size_t n = 0;
  for (int k = 0; k + 1 < s.n_steps; ++k)
    for (int b = 0; b < s.n_ghost(); ++b) {
      const double r =
          cs.xb[s.bidx(k + 1, l, b)] - cs.xb[s.bidx(k, l, b)];
      ssr += r * r;
      ++n;
    }
  return ig_posterior(s.priors.q_B, s.priors.r_B, n, ssr);
}

void GibbsSampler::sweep(ChainState& cs) const {
  const ModelSetup& s = setup_;
  std::normal_distribution<double> nd;
  auto draw = [&](GaussianMoments gm) {
    return gm.mean + std::sqrt(gm.var) * nd(cs.rng);
  };
  for (int k = 0; k < s.n_steps; ++k)
    for (int l = 0; l < s.n_levels(); ++l)
      for (int i = 0; i < s.n_cells(); ++i)
        cs.x[s.sidx(k, l, i)] = draw(state_conditional(cs, k, l, i));
  for (int k = 0; k < s.n_steps; ++k)
    for (int l = 0; l < s.n_levels(); ++l)
      for (int b = 0; b < s.n_ghost(); ++b)
        cs.xb[s.bidx(k, l, b)] = draw(boundary_conditional(cs, k, l, b));
  for (int l = 0; l < s.n_levels(); ++l) {
    if (s.coupled && l > 0) {
      const MFMoments mm = mf_conditional(cs, l);
      const double l11 = std::sqrt(mm.var_m);
      const double l21 = mm.cov / l11;
      const double l22 = std::sqrt(std::max(mm.var_f - l21 * l21, 0.0));
      const double e1 = nd(cs.rng), e2 = nd(cs.rng);
      cs.params.m[l] = mm.mean_m + l11 * e1;
      cs.params.f[l] = mm.mean_f + l21 * e1 + l22 * e2;
    } else {
      cs.params.m[l] = draw(m_conditional(cs, l));
    }
    cs.params.sigma2_eta[l] =
        draw_inverse_gamma(cs.rng, sigma2_eta_conditional(cs, l));
    cs.params.sigma2_B[l] =
        draw_inverse_gamma(cs.rng, sigma2_B_conditional(cs, l));
  }
  ++cs.iteration;
  if (!std::isfinite(cs.x[s.sidx(s.n_steps - 1, 0, 0)]) ||
      !std::isfinite(cs.params.sigma2_eta[0]))
    throw std::runtime_error("gibbs sweep: non-finite state at iteration " +
                             std::to_string(cs.iteration));
}

ModelParams GibbsSampler::draw_params_from_prior(std::mt19937_64& rng) const {
  const ModelSetup& s = setup_;
  const PriorConfig& pr = s.priors;
  const int L = s.n_levels();
  std::normal_distribution<double> nd;
  ModelParams p;
  p.m.resize(L);
  p.f.assign(L, 0.0);
  p.sigma2_eta.resize(L);
  p.sigma2_B.resize(L);
  for (int l = 0; l < L; ++l) {
    p.m[l] = pr.m0 + std::sqrt(pr.sigma2_m) * nd(rng);
    if (s.coupled && l > 0) p.f[l] = pr.f0 + std::sqrt(pr.sigma2_f) * nd(rng);
    p.sigma2_eta[l] = draw_inverse_gamma(rng, {pr.q_eta, pr.r_eta});
    p.sigma2_B[l] = draw_inverse_gamma(rng, {pr.q_B, pr.r_B});
  }
  return p;
}

void GibbsSampler::forward_simulate(ChainState& cs) const {
  const ModelSetup& s = setup_;
  const int L = s.n_levels(), N = s.n_cells(), NB = s.n_ghost();
  std::normal_distribution<double> nd;
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < N; ++i)
      cs.x[s.sidx(0, l, i)] = s.clim.mean[l] + s.clim.sd[l] * nd(cs.rng);
    for (int b = 0; b < NB; ++b)
      cs.xb[s.bidx(0, l, b)] =
          s.clim.mean[l] + s.clim.boundary_sd[l] * nd(cs.rng);
  }
  for (int k = 0; k + 1 < s.n_steps; ++k) {
    for (int l = 0; l < L; ++l) {
      const double sb = std::sqrt(cs.params.sigma2_B[l]);
      for (int b = 0; b < NB; ++b)
        cs.xb[s.bidx(k + 1, l, b)] = cs.xb[s.bidx(k, l, b)] + sb * nd(cs.rng);
    }
    // Levels ascending: the transition for level l reads level l-1 at k+1.
    for (int l = 0; l < L; ++l) {
      const double se = std::sqrt(cs.params.sigma2_eta[l]);
      for (int j = 0; j < N; ++j)
        cs.x[s.sidx(k + 1, l, j)] = row_mean(cs, k, l, j) + se * nd(cs.rng);
    }
  }
}

double effective_sample_size(std::span<const double> chain) {
  const std::size_t n = chain.size();
  if (n < 4) return static_cast<double>(n);
  double mean = 0;
  for (double x : chain) mean += x;
  mean /= n;
  double c0 = 0;
  for (double x : chain) c0 += (x - mean) * (x - mean);
  c0 /= n;
  if (c0 == 0) return static_cast<double>(n);
  double sum = 0;
  // Geyer initial positive sequence over paired lags.
  for (std::size_t t = 1; t + 1 < n; t += 2) {
    double g = 0;
    for (std::size_t lag : {t, t + 1}) {
      double c = 0;
      for (std::size_t i = 0; i + lag < n; ++i)
        c += (chain[i] - mean) * (chain[i + lag] - mean);
      g += c / n / c0;
    }
    if (g <= 0) break;
    sum += g;
  }
  return static_cast<double>(n) / (1.0 + 2.0 * sum);
}

namespace {

void finalize_diagnostics(PosteriorSummary& out, int n_levels) {
  auto add = [&out](const std::string& name,
                    const std::vector<double>& chain) {
    double mean = 0;
    for (double x : chain) mean += x;
    mean /= std::max<std::size_t>(1, chain.size());
    double var = 0;
    for (double x : chain) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(1, chain.size() > 1 ? chain.size() - 1 : 1);
    out.diag.param_name.push_back(name);
    out.diag.param_mean.push_back(mean);
    out.diag.param_sd.push_back(std::sqrt(var));
    out.diag.param_ess.push_back(effective_sample_size(chain));
  };
  out.diag = {};
  for (int l = 0; l < n_levels; ++l) {
    const std::string suffix = "[" + std::to_string(l + 1) + "]";
    add("m" + suffix, out.chains.m[l]);
    add("f" + suffix, out.chains.f[l]);
    add("sigma2_eta" + suffix, out.chains.sigma2_eta[l]);
    add("sigma2_B" + suffix, out.chains.sigma2_B[l]);
  }
}

}  // namespace

PosteriorSummary run_gibbs(const ModelSetup& setup, const SamplerConfig& cfg) {
  if (cfg.burn_in >= cfg.n_iter)
    throw std::invalid_argument("run_gibbs: burn_in must be < n_iter");
  if (cfg.thin < 1) throw std::invalid_argument("run_gibbs: thin must be >= 1");
  GibbsSampler gs(setup, cfg);
  ChainState cs = init_chain(setup, cfg);
  const int L = setup.n_levels();

  PosteriorSummary out;
  out.mean.assign(cs.x.size(), 0.0);
  out.sd.assign(cs.x.size(), 0.0);  // accumulates sum of squares first
  out.chains.m.resize(L);
  out.chains.f.resize(L);
  out.chains.sigma2_eta.resize(L);
  out.chains.sigma2_B.resize(L);

  for (int it = 0; it < cfg.n_iter; ++it) {
    gs.sweep(cs);
    if (it < cfg.burn_in || (it - cfg.burn_in) % cfg.thin != 0) continue;
    ++out.n_retained;
    for (std::size_t j = 0; j < cs.x.size(); ++j) {
      out.mean[j] += cs.x[j];
      out.sd[j] += cs.x[j] * cs.x[j];
    }
    for (int l = 0; l < L; ++l) {
      out.chains.m[l].push_back(cs.params.m[l]);
      out.chains.f[l].push_back(cs.params.f[l]);
      out.chains.sigma2_eta[l].push_back(cs.params.sigma2_eta[l]);
      out.chains.sigma2_B[l].push_back(cs.params.sigma2_B[l]);
    }
  }

  const double n = out.n_retained;
  for (std::size_t j = 0; j < out.mean.size(); ++j) {
    out.mean[j] /= n;
    const double var =
        n > 1 ? std::max(0.0, (out.sd[j] - n * out.mean[j] * out.mean[j]) /
                                  (n - 1))
              : 0.0;
    out.sd[j] = std::sqrt(var);
  }
  finalize_diagnostics(out, L);
  return out;
}

PosteriorSummary merge_summaries(const std::vector<PosteriorSummary>& parts) {
  if (parts.empty()) throw std::invalid_argument("merge_summaries: no parts");
  if (parts.size() == 1) return parts.front();
  PosteriorSummary out;
  const std::size_t sz = parts.front().mean.size();
  const int L = static_cast<int>(parts.front().chains.m.size());
  out.mean.assign(sz, 0.0);
  out.sd.assign(sz, 0.0);
  out.chains.m.resize(L);
  out.chains.f.resize(L);
  out.chains.sigma2_eta.resize(L);
  out.chains.sigma2_B.resize(L);
  for (const auto& p : parts) {
    const double n = p.n_retained;
    out.n_retained += p.n_retained;
    for (std::size_t j = 0; j < sz; ++j) {
      out.mean[j] += n * p.mean[j];
      out.sd[j] += (n - 1) * p.sd[j] * p.sd[j] + n * p.mean[j] * p.mean[j];
    }
    for (int l = 0; l < L; ++l) {
      auto append = [](auto& dst, const auto& src) {
        dst.insert(dst.end(), src.begin(), src.end());
      };
      append(out.chains.m[l], p.chains.m[l]);
      append(out.chains.f[l], p.chains.f[l]);
      append(out.chains.sigma2_eta[l], p.chains.sigma2_eta[l]);
      append(out.chains.sigma2_B[l], p.chains.sigma2_B[l]);
    }
  }
  const double n = out.n_retained;
  for (std::size_t j = 0; j < sz; ++j) {
    out.mean[j] /= n;
    const double var =
        n > 1 ? std::max(0.0, (out.sd[j] - n * out.mean[j] * out.mean[j]) /
                                  (n - 1))
              : 0.0;
    out.sd[j] = std::sqrt(var);
  }
  finalize_diagnostics(out, L);
  return out;
}

}  // namespace coassim
