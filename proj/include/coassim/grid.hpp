#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace coassim {

inline constexpr double kEarthRadiusM = 6'371'000.0;
inline constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

struct CellIndex {
  int ix = 0;
  int iy = 0;
  bool operator==(const CellIndex&) const = default;
};

// A stencil neighbor: either an interior cell (flat index) or a ghost-ring
// cell (ring index).
struct NeighborRef {
  bool ghost = false;
  int idx = 0;
  bool operator==(const NeighborRef&) const = default;
};

// Regular lon/lat/level lattice with a one-cell ghost ring per level.
// Ghost ring ordering: W edge (south to north), E edge (south to north),
// S edge (west to east), N edge (west to east), then corners SW, SE, NW, NE.
class Grid3D {
 public:
  double lon_min = 0, lon_max = 0, lat_min = 0, lat_max = 0;
  double d_lon = 1, d_lat = 1;
  int nx = 0, ny = 0;
  std::vector<double> levels;  // hPa, strictly decreasing (bottom to top)

  int n_cells() const { return nx * ny; }
  int n_levels() const { return static_cast<int>(levels.size()); }
  int n_ghost() const { return 2 * (nx + ny) + 4; }

  int flatten(CellIndex c) const { return c.iy * nx + c.ix; }
  CellIndex unflatten(int flat) const { return {flat % nx, flat / nx}; }
  bool in_interior(CellIndex c) const {
    return c.ix >= 0 && c.ix < nx && c.iy >= 0 && c.iy < ny;
  }

  double lat_of_row(int iy) const { return lat_min + iy * d_lat; }
  double lon_of_col(int ix) const { return lon_min + ix * d_lon; }

  // Ghost-ring index helpers, following the documented ring order.
  int ghost_west(int iy) const { return iy; }
  int ghost_east(int iy) const { return ny + iy; }
  int ghost_south(int ix) const { return 2 * ny + ix; }
  int ghost_north(int ix) const { return 2 * ny + nx + ix; }
};

struct Neighbors {
  NeighborRef east, west, north, south;
};

Grid3D build_grid(double lon_min, double lon_max, double lat_min,
                  double lat_max, double d_lon, double d_lat,
                  std::vector<double> levels);

Neighbors neighbors(const Grid3D& g, CellIndex c);

// Physical spacings in meters for a given row: dx follows the row latitude.
struct CellSpacing {
  double dx_m = 0;
  double dy_m = 0;
};
CellSpacing cell_spacing(const Grid3D& g, int iy);

// For a ghost-ring cell, the interior cell it abuts, or -1 for the four
// corners (never referenced by the 5-point stencil).
int ghost_adjacent_interior(const Grid3D& g, int ring_idx);

class grid_error : public std::runtime_error {
 public:
  explicit grid_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coassim
