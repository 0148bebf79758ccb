#include "coassim/config.hpp"

#include <fstream>

#include "json.hpp"

namespace coassim {

using nlohmann::json;

Grid3D RunConfig::make_grid() const {
  return build_grid(grid.lon_min, grid.lon_max, grid.lat_min, grid.lat_max,
                    grid.d_lon, grid.d_lat, grid.levels);
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.winds.base_speed = {5, 8, 11, 14, 17};
  cfg.truth.background = 8.0;
  cfg.truth.kappa = 0.3;
  // Broad plumes whose amplitudes grow with altitude, each with its steep
  // step at a different level, plus a smoke-like inflow tongue that weakens
  // and shifts northward with altitude: adjacent levels then differ in both their
  // plume mixture and their quasi-stationary inflow pattern, which keeps the
  // per-level fields linearly independent in the vertical.
  cfg.truth.plumes = {
      {238.0, 40.0, 5.0, 60.0, {0.2, 0.25, 0.6, 1.5, 1.55}},
      {243.0, 44.0, 4.5, 50.0, {0.1, 0.8, 0.85, 1.3, 1.8}},
      {240.5, 42.0, 5.5, 50.0, {0.15, 0.2, 1.05, 1.1, 1.15}},
  };
  cfg.truth.inflow = {4.0, 2.0, 8.0, 200.0, 0.70, 34.0, 3.5, 3.0, 0.35, 0.9};
  return cfg;
}

namespace {

template <class T>
void get_if(const json& j, const char* key, T& out, const std::string& path) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error(path + "." + key + ": " + e.what());
  }
}

void parse_plume(const json& j, PlumeSpec& p, const std::string& path) {
  get_if(j, "center_lon", p.center_lon, path);
  get_if(j, "center_lat", p.center_lat, path);
  get_if(j, "sd_cells", p.sd_cells, path);
  get_if(j, "peak", p.peak, path);
  get_if(j, "level_scale", p.level_scale, path);
}

}  // namespace

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw config_error("cannot open config file " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(file.string() + ": " + e.what());
  }
  RunConfig cfg = default_config();

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    get_if(g, "lon_min", cfg.grid.lon_min, "grid");
    get_if(g, "lon_max", cfg.grid.lon_max, "grid");
    get_if(g, "lat_min", cfg.grid.lat_min, "grid");
    get_if(g, "lat_max", cfg.grid.lat_max, "grid");
    get_if(g, "d_lon", cfg.grid.d_lon, "grid");
    get_if(g, "d_lat", cfg.grid.d_lat, "grid");
    get_if(g, "levels", cfg.grid.levels, "grid");
  }
  if (j.contains("time")) {
    get_if(j["time"], "n_steps", cfg.n_steps, "time");
    get_if(j["time"], "dt_seconds", cfg.dt, "time");
  }
  if (j.contains("winds")) {
    const auto& w = j["winds"];
    get_if(w, "base_speed", cfg.winds.base_speed, "winds");
    get_if(w, "amplitude", cfg.winds.amplitude, "winds");
    get_if(w, "v_amplitude", cfg.winds.v_amplitude, "winds");
    get_if(w, "wavelength_deg", cfg.winds.wavelength_deg, "winds");
    get_if(w, "period_steps", cfg.winds.period_steps, "winds");
  }
  if (j.contains("truth")) {
    const auto& t = j["truth"];
    get_if(t, "background", cfg.truth.background, "truth");
    get_if(t, "kappa", cfg.truth.kappa, "truth");
    get_if(t, "noise_sd", cfg.truth.noise_sd, "truth");
    get_if(t, "courant_max", cfg.truth.courant_max, "truth");
    if (t.contains("inflow")) {
      get_if(t["inflow"], "base", cfg.truth.inflow.base, "truth.inflow");
      get_if(t["inflow"], "amplitude", cfg.truth.inflow.amplitude,
             "truth.inflow");
      get_if(t["inflow"], "period_steps", cfg.truth.inflow.period_steps,
             "truth.inflow");
      get_if(t["inflow"], "bump", cfg.truth.inflow.bump, "truth.inflow");
      get_if(t["inflow"], "bump_growth", cfg.truth.inflow.bump_growth,
             "truth.inflow");
      get_if(t["inflow"], "bump_lat", cfg.truth.inflow.bump_lat,
             "truth.inflow");
      get_if(t["inflow"], "bump_lat_step", cfg.truth.inflow.bump_lat_step,
             "truth.inflow");
      get_if(t["inflow"], "bump_sd_deg", cfg.truth.inflow.bump_sd_deg,
             "truth.inflow");
      get_if(t["inflow"], "bump_mod", cfg.truth.inflow.bump_mod,
             "truth.inflow");
      get_if(t["inflow"], "bump_phase_step", cfg.truth.inflow.bump_phase_step,
             "truth.inflow");
      get_if(t["inflow"], "bump2", cfg.truth.inflow.bump2, "truth.inflow");
      get_if(t["inflow"], "bump2_growth", cfg.truth.inflow.bump2_growth,
             "truth.inflow");
      get_if(t["inflow"], "bump2_lat", cfg.truth.inflow.bump2_lat,
             "truth.inflow");
    }
    if (t.contains("plumes")) {
      cfg.truth.plumes.clear();
      int idx = 0;
      for (const auto& pj : t["plumes"]) {
        PlumeSpec p;
        parse_plume(pj, p, "truth.plumes[" + std::to_string(idx++) + "]");
        cfg.truth.plumes.push_back(p);
      }
    }
  }
  if (j.contains("clouds")) {
    const auto& c = j["clouds"];
    get_if(c, "target_coverage", cfg.clouds.target_coverage, "clouds");
    get_if(c, "n_blobs", cfg.clouds.n_blobs, "clouds");
    get_if(c, "radius_min_cells", cfg.clouds.radius_min_cells, "clouds");
    get_if(c, "radius_max_cells", cfg.clouds.radius_max_cells, "clouds");
    get_if(c, "drift_cells_per_step", cfg.clouds.drift_cells_per_step,
           "clouds");
    get_if(c, "jitter_cells", cfg.clouds.jitter_cells, "clouds");
  }
  if (j.contains("noise")) {
    get_if(j["noise"], "frac", cfg.noise_frac, "noise");
    get_if(j["noise"], "sigma_floor", cfg.sigma_floor, "noise");
  }
  if (j.contains("priors")) {
    const auto& p = j["priors"];
    get_if(p, "m0", cfg.priors.m0, "priors");
    get_if(p, "sigma2_m", cfg.priors.sigma2_m, "priors");
    get_if(p, "f0", cfg.priors.f0, "priors");
    get_if(p, "sigma2_f", cfg.priors.sigma2_f, "priors");
    get_if(p, "q_eta", cfg.priors.q_eta, "priors");
    get_if(p, "r_eta", cfg.priors.r_eta, "priors");
    get_if(p, "q_B", cfg.priors.q_B, "priors");
    get_if(p, "r_B", cfg.priors.r_B, "priors");
  }
  if (j.contains("sampler")) {
    const auto& s = j["sampler"];
    get_if(s, "n_iter", cfg.sampler.n_iter, "sampler");
    get_if(s, "burn_in", cfg.sampler.burn_in, "sampler");
    get_if(s, "thin", cfg.sampler.thin, "sampler");
    get_if(s, "coupled", cfg.sampler.coupled, "sampler");
    std::string sign = "paper";
    get_if(s, "advection_sign", sign, "sampler");
    if (sign == "paper")
      cfg.sampler.advection_sign = AdvectionSign::kPaper;
    else if (sign == "physical")
      cfg.sampler.advection_sign = AdvectionSign::kPhysical;
    else
      throw config_error("sampler.advection_sign: expected paper|physical");
    get_if(s, "plugin_noise", cfg.sampler.plugin_noise, "sampler");
    get_if(s, "init_corr_range_cells", cfg.sampler.init_corr_range_cells,
           "sampler");
  }
  if (j.contains("kriging")) {
    get_if(j["kriging"], "multistarts", cfg.kriging.multistarts, "kriging");
    get_if(j["kriging"], "tol", cfg.kriging.tol, "kriging");
  }
  if (j.contains("seed")) {
    get_if(j, "seed", cfg.seed, "");
    cfg.seed_set = true;
  }

  if (cfg.n_steps < 2) throw config_error("time.n_steps: must be >= 2");
  if (cfg.dt <= 0) throw config_error("time.dt_seconds: must be > 0");
  if (cfg.sampler.burn_in >= cfg.sampler.n_iter)
    throw config_error("sampler.burn_in: must be < sampler.n_iter");
  if (cfg.winds.base_speed.size() != cfg.grid.levels.size())
    throw config_error("winds.base_speed: need one entry per grid level");
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["grid"] = {{"lon_min", cfg.grid.lon_min}, {"lon_max", cfg.grid.lon_max},
               {"lat_min", cfg.grid.lat_min}, {"lat_max", cfg.grid.lat_max},
               {"d_lon", cfg.grid.d_lon},     {"d_lat", cfg.grid.d_lat},
               {"levels", cfg.grid.levels}};
  j["time"] = {{"n_steps", cfg.n_steps}, {"dt_seconds", cfg.dt}};
  j["winds"] = {{"base_speed", cfg.winds.base_speed},
                {"amplitude", cfg.winds.amplitude},
                {"v_amplitude", cfg.winds.v_amplitude},
                {"wavelength_deg", cfg.winds.wavelength_deg},
                {"period_steps", cfg.winds.period_steps}};
  json plumes = json::array();
  for (const auto& p : cfg.truth.plumes)
    plumes.push_back({{"center_lon", p.center_lon},
                      {"center_lat", p.center_lat},
                      {"sd_cells", p.sd_cells},
                      {"peak", p.peak},
                      {"level_scale", p.level_scale}});
  j["truth"] = {{"background", cfg.truth.background},
                {"plumes", plumes},
                {"inflow",
                 {{"base", cfg.truth.inflow.base},
                  {"amplitude", cfg.truth.inflow.amplitude},
                  {"period_steps", cfg.truth.inflow.period_steps},
                  {"bump", cfg.truth.inflow.bump},
                  {"bump_growth", cfg.truth.inflow.bump_growth},
                  {"bump_lat", cfg.truth.inflow.bump_lat},
                  {"bump_lat_step", cfg.truth.inflow.bump_lat_step},
                  {"bump_sd_deg", cfg.truth.inflow.bump_sd_deg},
                  {"bump_mod", cfg.truth.inflow.bump_mod},
                  {"bump_phase_step", cfg.truth.inflow.bump_phase_step},
                  {"bump2", cfg.truth.inflow.bump2},
                  {"bump2_growth", cfg.truth.inflow.bump2_growth},
                  {"bump2_lat", cfg.truth.inflow.bump2_lat}}},
                {"kappa", cfg.truth.kappa},
                {"noise_sd", cfg.truth.noise_sd},
                {"courant_max", cfg.truth.courant_max}};
  j["clouds"] = {{"target_coverage", cfg.clouds.target_coverage},
                 {"n_blobs", cfg.clouds.n_blobs},
                 {"radius_min_cells", cfg.clouds.radius_min_cells},
                 {"radius_max_cells", cfg.clouds.radius_max_cells},
                 {"drift_cells_per_step", cfg.clouds.drift_cells_per_step},
                 {"jitter_cells", cfg.clouds.jitter_cells}};
  j["noise"] = {{"frac", cfg.noise_frac}, {"sigma_floor", cfg.sigma_floor}};
  j["priors"] = {{"m0", cfg.priors.m0},
                 {"sigma2_m", cfg.priors.sigma2_m},
                 {"f0", cfg.priors.f0},
                 {"sigma2_f", cfg.priors.sigma2_f},
                 {"q_eta", cfg.priors.q_eta},
                 {"r_eta", cfg.priors.r_eta},
                 {"q_B", cfg.priors.q_B},
                 {"r_B", cfg.priors.r_B}};
  j["sampler"] = {
      {"n_iter", cfg.sampler.n_iter},
      {"burn_in", cfg.sampler.burn_in},
      {"thin", cfg.sampler.thin},
      {"coupled", cfg.sampler.coupled},
      {"advection_sign",
       cfg.sampler.advection_sign == AdvectionSign::kPaper ? "paper"
                                                           : "physical"},
      {"plugin_noise", cfg.sampler.plugin_noise},
      {"init_corr_range_cells", cfg.sampler.init_corr_range_cells}};
  j["kriging"] = {{"multistarts", cfg.kriging.multistarts},
                  {"tol", cfg.kriging.tol}};
  j["seed"] = cfg.seed;
  return j.dump(2);
}

}  // namespace coassim
