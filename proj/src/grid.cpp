#include "coassim/grid.hpp"

#include <cmath>

namespace coassim {

namespace {

int axis_count(double lo, double hi, double step, const char* name) {
  if (step <= 0) throw grid_error(std::string(name) + ": spacing must be > 0");
  const double steps = (hi - lo) / step;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
    throw grid_error(std::string(name) +
                     ": bounds are not an integral number of spacings");
  const int n = static_cast<int>(rounded) + 1;
  if (n < 3)
    throw grid_error(std::string(name) + ": need at least 3 cells per axis");
  return n;
}

}  // namespace

Grid3D build_grid(double lon_min, double lon_max, double lat_min,
                  double lat_max, double d_lon, double d_lat,
                  std::vector<double> levels) {
  if (levels.size() < 2) throw grid_error("need at least 2 pressure levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i] < levels[i - 1]))
      throw grid_error("levels must be strictly decreasing in hPa");
  Grid3D g;
  g.lon_min = lon_min;
  g.lon_max = lon_max;
  g.lat_min = lat_min;
  g.lat_max = lat_max;
  g.d_lon = d_lon;
  g.d_lat = d_lat;
  g.nx = axis_count(lon_min, lon_max, d_lon, "lon");
  g.ny = axis_count(lat_min, lat_max, d_lat, "lat");
  g.levels = std::move(levels);
  return g;
}

Neighbors neighbors(const Grid3D& g, CellIndex c) {
  Neighbors n;
  n.east = c.ix + 1 < g.nx ? NeighborRef{false, g.flatten({c.ix + 1, c.iy})}
                           : NeighborRef{true, g.ghost_east(c.iy)};
  n.west = c.ix - 1 >= 0 ? NeighborRef{false, g.flatten({c.ix - 1, c.iy})}
                         : NeighborRef{true, g.ghost_west(c.iy)};
  n.north = c.iy + 1 < g.ny ? NeighborRef{false, g.flatten({c.ix, c.iy + 1})}
                            : NeighborRef{true, g.ghost_north(c.ix)};
  n.south = c.iy - 1 >= 0 ? NeighborRef{false, g.flatten({c.ix, c.iy - 1})}
                          : NeighborRef{true, g.ghost_south(c.ix)};
  return n;
}

CellSpacing cell_spacing(const Grid3D& g, int iy) {
  const double lat = g.lat_of_row(iy);
  CellSpacing s;
  s.dy_m = kEarthRadiusM * g.d_lat * kDegToRad;
  s.dx_m = kEarthRadiusM * std::cos(lat * kDegToRad) * g.d_lon * kDegToRad;
  return s;
}

int ghost_adjacent_interior(const Grid3D& g, int ring_idx) {
  if (ring_idx < g.ny) return g.flatten({0, ring_idx});
  if (ring_idx < 2 * g.ny) return g.flatten({g.nx - 1, ring_idx - g.ny});
  if (ring_idx < 2 * g.ny + g.nx) return g.flatten({ring_idx - 2 * g.ny, 0});
  if (ring_idx < 2 * g.ny + 2 * g.nx)
    return g.flatten({ring_idx - 2 * g.ny - g.nx, g.ny - 1});
  return -1;  // corner
}

}  // namespace coassim
