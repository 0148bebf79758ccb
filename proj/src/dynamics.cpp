#include "coassim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace coassim {

WindField make_wind_field(const Grid3D& g, int n_steps, double dt) {
  WindField w;
  w.n_steps = n_steps;
  w.dt = dt;
  const auto zeros = std::vector<double>(g.n_cells(), 0.0);
  w.u.assign(n_steps, std::vector<std::vector<double>>(g.n_levels(), zeros));
  w.v = w.u;
  return w;
}

void validate_winds(const WindField& w) {
  if (w.dt <= 0) throw std::invalid_argument("wind field: dt must be > 0");
  for (const auto* comp : {&w.u, &w.v})
    for (const auto& lev : *comp)
      for (const auto& slice : lev)
        for (double x : slice)
          if (!std::isfinite(x) || std::abs(x) > 150.0)
            throw std::invalid_argument(
                "wind field: non-finite or out-of-range speed");
}

double Propagator::interior_coef(int row, int i) const {
  double c = 0.0;
  for (const auto& e : rows[row])
    if (!e.col.ghost && e.col.idx == i) c += e.coef;
  return c;
}

double Propagator::ghost_coef(int row, int b) const {
  double c = 0.0;
  for (const auto& e : rows[row])
    if (e.col.ghost && e.col.idx == b) c += e.coef;
  return c;
}

Propagator build_propagator(const Grid3D& g, const WindField& w, int k, int l,
                            AdvectionSign sign) {
  if (k < 0 || k >= w.n_steps - 1)
    throw std::out_of_range("build_propagator: time index out of range");
  if (l < 0 || l >= g.n_levels())
    throw std::out_of_range("build_propagator: level index out of range");
  const double flip = sign == AdvectionSign::kPaper ? 1.0 : -1.0;
  Propagator p;
  p.k = k;
  p.level = l;
  p.rows.resize(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    const CellIndex c = g.unflatten(i);
    const CellSpacing sp = cell_spacing(g, c.iy);
    const double cu = flip * w.dt * w.at_u(k, l, i) / (2.0 * sp.dx_m);
    const double cv = flip * w.dt * w.at_v(k, l, i) / (2.0 * sp.dy_m);
    const Neighbors nb = neighbors(g, c);
    p.rows[i] = {StencilEntry{nb.east, cu}, StencilEntry{nb.west, -cu},
                 StencilEntry{nb.north, cv}, StencilEntry{nb.south, -cv}};
  }
  return p;
}

std::vector<double> step_mean(const std::vector<double>& x_k,
                              const std::vector<double>& xb_k,
                              const std::vector<double>& x_below_k1, double m,
                              double f, const Propagator& p) {
  const std::size_t n = p.rows.size();
  if (x_k.size() != n || (f != 0.0 && x_below_k1.size() != n))
    throw std::invalid_argument("step_mean: dimension mismatch");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = m * x_k[i];
    if (f != 0.0) acc += f * x_below_k1[i];
    for (const auto& e : p.rows[i])
      acc += e.coef * (e.col.ghost ? xb_k[e.col.idx] : x_k[e.col.idx]);
    out[i] = acc;
  }
  return out;
}

double courant_report(const Grid3D& g, const WindField& w) {
  double worst = 0.0;
  for (int k = 0; k < w.n_steps; ++k)
    for (int l = 0; l < g.n_levels(); ++l)
      for (int i = 0; i < g.n_cells(); ++i) {
        const CellSpacing sp = cell_spacing(g, g.unflatten(i).iy);
        const double c = std::abs(w.dt * w.at_u(k, l, i) / (2.0 * sp.dx_m)) +
                         std::abs(w.dt * w.at_v(k, l, i) / (2.0 * sp.dy_m));
        worst = std::max(worst, c);
      }
  return worst;
}

}  // namespace coassim
