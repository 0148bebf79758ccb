#include "coassim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coassim/rng.hpp"

namespace coassim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double CloudMask::coverage(int k) const {
  const auto& row = cloudy[k];
  double n = 0;
  for (bool b : row) n += b ? 1 : 0;
  return n / static_cast<double>(row.size());
}

double CloudMask::mean_coverage() const {
  double acc = 0;
  for (int k = 0; k < n_steps; ++k) acc += coverage(k);
  return acc / n_steps;
}

WindField synth_winds(const Grid3D& g, const WindSpec& spec, int n_steps,
                      double dt, std::uint64_t seed) {
  if (static_cast<int>(spec.base_speed.size()) != g.n_levels())
    throw std::invalid_argument("wind spec: need one base speed per level");
  for (double x : {spec.amplitude, spec.v_amplitude, spec.wavelength_deg,
                   spec.period_steps})
    if (!std::isfinite(x)) throw std::invalid_argument("wind spec: non-finite");
  auto rng = make_rng(seed, "winds");
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  const double phi_u = phase(rng), phi_v = phase(rng);
  WindField w = make_wind_field(g, n_steps, dt);
  for (int k = 0; k < n_steps; ++k) {
    const double phik = kTwoPi * k / spec.period_steps;
    for (int l = 0; l < g.n_levels(); ++l)
      for (int i = 0; i < g.n_cells(); ++i) {
        const CellIndex c = g.unflatten(i);
        const double lat = g.lat_of_row(c.iy), lon = g.lon_of_col(c.ix);
        w.u[k][l][i] =
            spec.base_speed[l] +
            spec.amplitude *
                std::sin(kTwoPi * (lat - g.lat_min) / spec.wavelength_deg +
                         phik + phi_u);
        w.v[k][l][i] =
            spec.v_amplitude *
            std::sin(kTwoPi * (lon - g.lon_min) / spec.wavelength_deg + phik +
                     phi_v);
      }
  }
  validate_winds(w);
  return w;
}

namespace {

// Western ghost cells carry the inflow signal; the rest of the ring sits at
// the background value.
std::vector<double> ghost_values(const Grid3D& g, const TruthSpec& spec,
                                 double level_scale, int l, int k) {
  const double inflow =
      spec.inflow.base +
      spec.inflow.amplitude *
          std::sin(kTwoPi * k / std::max(1.0, spec.inflow.period_steps));
  const double bump_amp =
      spec.inflow.bump * std::pow(spec.inflow.bump_growth, l) *
      (1.0 + spec.inflow.bump_mod *
                 std::sin(kTwoPi * k / std::max(1.0, spec.inflow.period_steps) +
                          l * spec.inflow.bump_phase_step));
  const double bump_lat = spec.inflow.bump_lat + l * spec.inflow.bump_lat_step;
  const double bump2_amp =
      spec.inflow.bump2 * std::pow(spec.inflow.bump2_growth, l);
  std::vector<double> gh(g.n_ghost(), spec.background);
  for (int iy = 0; iy < g.ny; ++iy) {
    const double dy = (g.lat_of_row(iy) - bump_lat) / spec.inflow.bump_sd_deg;
    const double dy2 =
        (g.lat_of_row(iy) - spec.inflow.bump2_lat) / spec.inflow.bump_sd_deg;
    gh[g.ghost_west(iy)] =
        std::max(0.0, spec.background + inflow * level_scale +
                          bump_amp * std::exp(-0.5 * dy * dy) +
                          bump2_amp * std::exp(-0.5 * dy2 * dy2));
  }
  return gh;
}

// First-order upwind update in advective form; preserves constants exactly.
void upwind_substep(const Grid3D& g, const std::vector<double>& u,
                    const std::vector<double>& v,
                    const std::vector<double>& gh, double dt,
                    std::vector<double>& x) {
  std::vector<double> next(x.size());
  for (int i = 0; i < g.n_cells(); ++i) {
    const CellIndex c = g.unflatten(i);
    const CellSpacing sp = cell_spacing(g, c.iy);
    const Neighbors nb = neighbors(g, c);
    auto val = [&](NeighborRef r) { return r.ghost ? gh[r.idx] : x[r.idx]; };
    const double up = std::max(u[i], 0.0), um = std::min(u[i], 0.0);
    const double vp = std::max(v[i], 0.0), vm = std::min(v[i], 0.0);
    next[i] = x[i] - dt * (up * (x[i] - val(nb.west)) / sp.dx_m +
                           um * (val(nb.east) - x[i]) / sp.dx_m +
                           vp * (x[i] - val(nb.south)) / sp.dy_m +
                           vm * (val(nb.north) - x[i]) / sp.dy_m);
  }
  x = std::move(next);
}

}  // namespace

TruthField simulate_truth(const Grid3D& g, const WindField& w,
                          const TruthSpec& spec, std::uint64_t seed) {
  if (spec.kappa < 0) throw std::invalid_argument("truth spec: kappa < 0");
  for (const auto& p : spec.plumes) {
    if (p.peak < 0) throw std::invalid_argument("truth spec: negative peak");
    if (!p.level_scale.empty() &&
        static_cast<int>(p.level_scale.size()) != g.n_levels())
      throw std::invalid_argument("truth spec: level_scale length");
  }
  const int L = g.n_levels(), N = g.n_cells(), T = w.n_steps;
  auto rng = make_rng(seed, "truth");

  auto plume_scale = [&](const PlumeSpec& p, int l) {
    return p.level_scale.empty() ? 1.0 : p.level_scale[l];
  };

  TruthField t;
  t.n_steps = T;
  t.x.assign(T, std::vector<std::vector<double>>(
                    L, std::vector<double>(N, spec.background)));
  t.ghost.assign(T, std::vector<std::vector<double>>(L));

  // Initial plumes, measured in cell units so sd_cells is isotropic on the
  // index lattice.
  for (int l = 0; l < L; ++l)
    for (int i = 0; i < N; ++i) {
      const CellIndex c = g.unflatten(i);
      for (const auto& p : spec.plumes) {
        const double dx = (g.lon_of_col(c.ix) - p.center_lon) / g.d_lon;
        const double dy = (g.lat_of_row(c.iy) - p.center_lat) / g.d_lat;
        t.x[0][l][i] += p.peak * plume_scale(p, l) *
                        std::exp(-(dx * dx + dy * dy) /
                                 (2.0 * p.sd_cells * p.sd_cells));
      }
    }

  std::vector<double> inflow_scale(L, 1.0);
  for (int l = 0; l < L; ++l)
    if (!spec.plumes.empty()) inflow_scale[l] = plume_scale(spec.plumes[0], l);
  for (int l = 0; l < L; ++l)
    t.ghost[0][l] = ghost_values(g, spec, inflow_scale[l], l, 0);

  for (int k = 0; k + 1 < T; ++k) {
    for (int l = 0; l < L; ++l) {
      std::vector<double> x = t.x[k][l];
      const auto gh = ghost_values(g, spec, inflow_scale[l], l, k);
      // Sub-step so each sub-step Courant number stays under the target.
      double cmax = 0;
      for (int i = 0; i < N; ++i) {
        const CellSpacing sp = cell_spacing(g, g.unflatten(i).iy);
        cmax = std::max(cmax, std::abs(w.at_u(k, l, i)) * w.dt / sp.dx_m +
                                  std::abs(w.at_v(k, l, i)) * w.dt / sp.dy_m);
      }
      const int n_sub =
          std::max(1, static_cast<int>(std::ceil(cmax / spec.courant_max)));
      for (int s = 0; s < n_sub; ++s)
        upwind_substep(g, w.u[k][l], w.v[k][l], gh, w.dt / n_sub, x);
      t.x[k + 1][l] = std::move(x);
      t.ghost[k + 1][l] = ghost_values(g, spec, inflow_scale[l], l, k + 1);
    }
    // Weak relaxation toward the mean of vertically adjacent levels.
    if (spec.kappa > 0 && L > 1) {
      const auto cur = t.x[k + 1];
      for (int l = 0; l < L; ++l)
        for (int i = 0; i < N; ++i) {
          double nb = 0;
          int cnt = 0;
          if (l > 0) nb += cur[l - 1][i], ++cnt;
          if (l + 1 < L) nb += cur[l + 1][i], ++cnt;
          t.x[k + 1][l][i] += spec.kappa * (nb / cnt - cur[l][i]);
        }
    }
    if (spec.noise_sd > 0)
      for (int l = 0; l < L; ++l)
        for (int i = 0; i < N; ++i)
          t.x[k + 1][l][i] = std::max(
              0.0, t.x[k + 1][l][i] + draw_normal(rng, 0.0, spec.noise_sd));
  }
  return t;
}

CloudMask synth_clouds(const Grid3D& g, const CloudSpec& spec, int n_steps,
                       std::uint64_t seed) {
  if (spec.target_coverage < 0 || spec.target_coverage > 0.95)
    throw std::invalid_argument("cloud spec: coverage must be in [0, 0.95]");
  auto rng = make_rng(seed, "clouds");
  CloudMask m;
  m.n_steps = n_steps;
  m.cloudy.assign(n_steps, std::vector<bool>(g.n_cells(), false));
  if (spec.target_coverage == 0.0 || n_steps == 0) return m;

  const double r_mean = 0.5 * (spec.radius_min_cells + spec.radius_max_cells);
  const double area = std::numbers::pi * r_mean * r_mean;
  int n_blobs = spec.n_blobs;
  if (n_blobs <= 0) {
    // Coverage of k independently placed blobs: 1 - (1 - a/N)^k.
    const double per = std::min(0.9, area / g.n_cells());
    n_blobs = std::max(1, static_cast<int>(std::lround(
                              std::log1p(-spec.target_coverage) /
                              std::log1p(-per))));
  }

  struct Blob {
    double cx, cy, rx, ry;
  };
  std::uniform_real_distribution<double> ux(0.0, g.nx), uy(0.0, g.ny),
      ur(spec.radius_min_cells, spec.radius_max_cells);
  std::vector<Blob> blobs(n_blobs);
  for (auto& b : blobs) b = {ux(rng), uy(rng), ur(rng), ur(rng)};

  auto wrap = [](double x, double n) {
    double r = std::fmod(x, n);
    return r < 0 ? r + n : r;
  };

  for (int k = 0; k < n_steps; ++k) {
    auto& row = m.cloudy[k];
    for (const auto& b : blobs)
      for (int i = 0; i < g.n_cells(); ++i) {
        const CellIndex c = g.unflatten(i);
        // Nearest periodic image in x so westward-wrapped blobs stay whole.
        double dx = c.ix - b.cx;
        if (dx > g.nx / 2.0) dx -= g.nx;
        if (dx < -g.nx / 2.0) dx += g.nx;
        const double dy = c.iy - b.cy;
        if ((dx * dx) / (b.rx * b.rx) + (dy * dy) / (b.ry * b.ry) <= 1.0)
          row[i] = true;
      }
    bool any_free = false;
    for (int i = 0; i < g.n_cells(); ++i) any_free |= !row[i];
    if (!any_free) row[0] = false;  // every step must carry data
    for (auto& b : blobs) {
      b.cx = wrap(b.cx - spec.drift_cells_per_step +
                      draw_normal(rng, 0.0, spec.jitter_cells),
                  g.nx);
      b.cy = wrap(b.cy + draw_normal(rng, 0.0, spec.jitter_cells), g.ny);
    }
  }
  return m;
}

ObservationSet observe(const Grid3D& g, const TruthField& truth,
                       const CloudMask& mask, double noise_frac,
                       double sigma_floor, std::uint64_t seed) {
  if (noise_frac <= 0)
    throw std::invalid_argument("observe: noise_frac must be > 0");
  auto rng = make_rng(seed, "noise");
  ObservationSet s;
  s.n_steps = truth.n_steps;
  s.n_levels = g.n_levels();
  s.obs.assign(s.n_steps, std::vector<std::vector<Observation>>(s.n_levels));
  for (int k = 0; k < s.n_steps; ++k)
    for (int i = 0; i < g.n_cells(); ++i) {
      if (mask.cloudy[k][i]) continue;
      for (int l = 0; l < s.n_levels; ++l) {
        const double xt = truth.x[k][l][i];
        const double y = xt + draw_normal(rng, 0.0, noise_frac * xt);
        s.obs[k][l].push_back(
            {i, y, std::max(noise_frac * xt, sigma_floor)});
      }
    }
  return s;
}

}  // namespace coassim
