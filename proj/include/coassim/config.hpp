#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "coassim/kriging.hpp"
#include "coassim/sampler.hpp"
#include "coassim/scenario.hpp"

namespace coassim {

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct GridSpecConfig {
  double lon_min = 231.5, lon_max = 248.5;
  double lat_min = 33.5, lat_max = 48.5;
  double d_lon = 1.0, d_lat = 1.0;
  std::vector<double> levels = {850, 750, 650, 550, 450};
};

struct RunConfig {
  GridSpecConfig grid;
  int n_steps = 32;         // 4 days of 3-hourly steps
  double dt = 10800.0;      // seconds
  WindSpec winds;
  TruthSpec truth;
  CloudSpec clouds;
  double noise_frac = 0.10;
  double sigma_floor = 1.0;
  PriorConfig priors;
  SamplerConfig sampler;
  MleOptions kriging;
  std::uint64_t seed = 0;
  bool seed_set = false;

  Grid3D make_grid() const;
};

RunConfig default_config();
RunConfig load_config(const std::filesystem::path& file);
std::string config_to_json(const RunConfig& cfg);

}  // namespace coassim
