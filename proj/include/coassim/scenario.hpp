#pragma once

#include <cstdint>
#include <vector>

#include "coassim/dynamics.hpp"
#include "coassim/grid.hpp"

namespace coassim {

// Smooth synthetic winds: per-level base zonal flow plus a sinusoidal
// perturbation that rotates slowly in time.
struct WindSpec {
  std::vector<double> base_speed;  // U0(l), m/s, one per level
  double amplitude = 3.0;          // u perturbation, m/s
  double v_amplitude = 2.0;        // v perturbation, m/s
  double wavelength_deg = 8.0;
  double period_steps = 8.0;
};

struct PlumeSpec {
  double center_lon = 0, center_lat = 0;
  double sd_cells = 2.5;
  double peak = 120.0;                    // ppb, at the bottom level
  std::vector<double> level_scale;        // per-level peak multiplier, >= 0
};

struct InflowSpec {
  double base = 0.0;       // ppb added to the western ghost column
  double amplitude = 0.0;  // time-varying part
  double period_steps = 8.0;
  // Steady latitudinal bump riding on the inflow; its center climbs with
  // altitude so each level feeds a distinct quasi-stationary tongue.
  double bump = 0.0;          // ppb at the bottom level
  double bump_growth = 1.2;   // per-level amplitude factor
  double bump_lat = 40.0;     // deg, bump center at the bottom level
  double bump_lat_step = 0.0; // deg of northward shift per level
  double bump_sd_deg = 2.5;
  // Temporal modulation of the bump, phase-staggered across levels so the
  // per-level inflow histories are linearly independent.
  double bump_mod = 0.0;        // modulation depth in [0, 1)
  double bump_phase_step = 0.0; // radians of phase lag per level
  // Second bump whose amplitude decreases with altitude, so each level sees a
  // different mixture of the two latitudinal patterns.
  double bump2 = 0.0;
  double bump2_growth = 0.8;
  double bump2_lat = 44.0;
};

struct TruthSpec {
  double background = 60.0;  // ppb
  std::vector<PlumeSpec> plumes;
  InflowSpec inflow;
  double kappa = 0.05;       // vertical relaxation rate per step
  double noise_sd = 0.5;     // ppb, positive-truncated process noise
  double courant_max = 0.8;  // sub-stepping target
};

struct CloudSpec {
  double target_coverage = 0.4;
  int n_blobs = 0;  // 0 = choose from target coverage
  double radius_min_cells = 2.0;
  double radius_max_cells = 4.0;
  double drift_cells_per_step = 1.0;  // westward
  double jitter_cells = 0.5;          // random-walk sd of blob centers
};

struct TruthField {
  int n_steps = 0;
  std::vector<std::vector<std::vector<double>>> x;      // [k][l][i], ppb
  std::vector<std::vector<std::vector<double>>> ghost;  // [k][l][b], ppb
};

struct CloudMask {
  int n_steps = 0;
  std::vector<std::vector<bool>> cloudy;  // [k][i], column property

  double coverage(int k) const;
  double mean_coverage() const;
};

struct Observation {
  int cell = 0;
  double value = 0;  // ppb
  double sigma = 0;  // ppb
};

struct ObservationSet {
  int n_steps = 0;
  int n_levels = 0;
  // obs[k][l]: cloud-free cells at time k, identical incidence across levels.
  std::vector<std::vector<std::vector<Observation>>> obs;
};

WindField synth_winds(const Grid3D& g, const WindSpec& spec, int n_steps,
                      double dt, std::uint64_t seed);

TruthField simulate_truth(const Grid3D& g, const WindField& w,
                          const TruthSpec& spec, std::uint64_t seed);

CloudMask synth_clouds(const Grid3D& g, const CloudSpec& spec, int n_steps,
                       std::uint64_t seed);

ObservationSet observe(const Grid3D& g, const TruthField& truth,
                       const CloudMask& mask, double noise_frac,
                       double sigma_floor, std::uint64_t seed);

}  // namespace coassim
