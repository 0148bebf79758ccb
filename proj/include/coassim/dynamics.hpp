#pragma once

#include <array>
#include <vector>

#include "coassim/grid.hpp"

namespace coassim {

// Horizontal winds on the interior lattice, per time step and level.
// Index order: w.u[k][l][i] with k in 0..T-1, l in 0..L-1, i flat interior.
struct WindField {
  int n_steps = 0;
  double dt = 0.0;  // seconds
  std::vector<std::vector<std::vector<double>>> u, v;  // m/s

  double at_u(int k, int l, int i) const { return u[k][l][i]; }
  double at_v(int k, int l, int i) const { return v[k][l][i]; }
};

WindField make_wind_field(const Grid3D& g, int n_steps, double dt);
void validate_winds(const WindField& w);

enum class AdvectionSign {
  kPaper,     // +u * centered difference, as written in the transition model
  kPhysical,  // -u * centered difference, conventional tracer advection
};

// One row of the advection stencil: signed coefficients on the four
// neighbors, each either an interior column or a ghost-ring column.
struct StencilEntry {
  NeighborRef col;
  double coef = 0.0;
};

// Sparse [A | A_B] for one (time, level): exactly 4 entries per interior row.
struct Propagator {
  int k = 0;
  int level = 0;
  std::vector<std::array<StencilEntry, 4>> rows;  // order: E, W, N, S

  // Signed coefficient row `row` assigns to interior column i, 0 if absent.
  double interior_coef(int row, int i) const;
  // Signed coefficient row `row` assigns to ghost column b, 0 if absent.
  double ghost_coef(int row, int b) const;
};

Propagator build_propagator(const Grid3D& g, const WindField& w, int k, int l,
                            AdvectionSign sign = AdvectionSign::kPaper);

// Deterministic one-step conditional mean:
//   m * x_k + f * x_below_k1 + A x_k + A_B xb_k.
// x_below_k1 is the level-below slice at time k+1 (empty when f = 0).
std::vector<double> step_mean(const std::vector<double>& x_k,
                              const std::vector<double>& xb_k,
                              const std::vector<double>& x_below_k1, double m,
                              double f, const Propagator& p);

// max over (k,l,i) of |dt u / 2dx| + |dt v / 2dy|.
double courant_report(const Grid3D& g, const WindField& w);

}  // namespace coassim
