#pragma once

// Small helpers shared by the unit and acceptance tests.

#include <random>

#include "coassim/grid.hpp"
#include "coassim/sampler.hpp"
#include "coassim/scenario.hpp"

namespace coassim::testing {

inline Grid3D toy_grid(int nx, int ny, int n_levels) {
  Grid3D g;
  g.lon_min = 0;
  g.lon_max = nx - 1;
  g.lat_min = 40;
  g.lat_max = 40 + ny - 1;
  g.d_lon = g.d_lat = 1;
  g.nx = nx;
  g.ny = ny;
  g.levels.resize(n_levels);
  for (int l = 0; l < n_levels; ++l) g.levels[l] = 850 - 100 * l;
  return g;
}

inline WindField random_winds(const Grid3D& g, int n_steps, double dt,
                              std::uint64_t seed, double max_speed = 12.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sp(-max_speed, max_speed);
  WindField w = make_wind_field(g, n_steps, dt);
  for (auto& lev : w.u)
    for (auto& slice : lev)
      for (auto& x : slice) x = sp(rng);
  for (auto& lev : w.v)
    for (auto& slice : lev)
      for (auto& x : slice) x = sp(rng);
  return w;
}

// Random cloud-free incidence with base value ~100 ppb, identical across
// levels at each time as the column-masking contract requires.
inline ObservationSet random_obs(const Grid3D& g, int n_steps,
                                 std::uint64_t seed, double obs_frac = 0.6,
                                 double base = 100.0, double sigma = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0, 1);
  std::normal_distribution<double> nd(0, 1);
  ObservationSet s;
  s.n_steps = n_steps;
  s.n_levels = g.n_levels();
  s.obs.assign(n_steps, std::vector<std::vector<Observation>>(s.n_levels));
  for (int k = 0; k < n_steps; ++k)
    for (int i = 0; i < g.n_cells(); ++i) {
      if (u01(rng) > obs_frac) continue;
      for (int l = 0; l < s.n_levels; ++l)
        s.obs[k][l].push_back({i, base + 10.0 * nd(rng), sigma});
    }
  return s;
}

inline ModelParams fixed_params(int n_levels, double m, double f,
                                double s2_eta, double s2_b) {
  ModelParams p;
  p.m.assign(n_levels, m);
  p.f.assign(n_levels, f);
  p.f[0] = 0.0;
  p.sigma2_eta.assign(n_levels, s2_eta);
  p.sigma2_B.assign(n_levels, s2_b);
  return p;
}

}  // namespace coassim::testing
