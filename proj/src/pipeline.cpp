#include "coassim/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <thread>

#include "json.hpp"

#include "coassim/io.hpp"
#include "coassim/rng.hpp"

namespace coassim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a_str(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void require_file(const fs::path& p, const std::string& stage) {
  if (!fs::exists(p))
    throw missing_artifact_error(stage + ": missing artifact " + p.string());
}

void write_manifest(const fs::path& dir, const RunConfig& cfg,
                    const std::string& stage, const std::string& method,
                    const std::vector<fs::path>& artifacts) {
  json m;
  m["stage"] = stage;
  if (!method.empty()) m["method"] = method;
  m["version"] = kVersion;
  m["seed"] = cfg.seed;
  m["scenario_id"] = scenario_id(cfg);
  m["config"] = json::parse(config_to_json(cfg));
  json sums;
  for (const auto& a : artifacts)
    sums[a.filename().string()] = fnv1a_hex(fnv1a_file(a));
  m["artifacts"] = sums;
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << "\n";
}

json read_manifest(const fs::path& dir, const std::string& stage) {
  require_file(dir / "manifest.json", stage);
  std::ifstream in(dir / "manifest.json");
  json m;
  in >> m;
  return m;
}

RunConfig config_from_manifest(const json& m) {
  const fs::path tmp =
      fs::temp_directory_path() /
      ("co-assim-cfg-" + std::to_string(fnv1a_str(m.dump())) + ".json");
  std::ofstream(tmp) << m.at("config").dump();
  RunConfig cfg = load_config(tmp);
  fs::remove(tmp);
  cfg.seed = m.at("seed").get<std::uint64_t>();
  cfg.seed_set = true;
  return cfg;
}

}  // namespace

std::string scenario_id(const RunConfig& cfg) {
  RunConfig sc = cfg;
  // Fit-stage settings do not change the scenario identity.
  sc.sampler = SamplerConfig{};
  sc.priors = PriorConfig{};
  sc.kriging = MleOptions{};
  return fnv1a_hex(fnv1a_str(config_to_json(sc) + "#" +
                             std::to_string(cfg.seed)));
}

void stage_simulate(const RunConfig& cfg, const fs::path& out) {
  fs::create_directories(out);
  const Grid3D g = cfg.make_grid();
  const WindField w =
      synth_winds(g, cfg.winds, cfg.n_steps, cfg.dt, cfg.seed);
  const TruthField t = simulate_truth(g, w, cfg.truth, cfg.seed);
  const CloudMask m = synth_clouds(g, cfg.clouds, cfg.n_steps, cfg.seed);

  write_winds_csv(out / "winds.csv", g, w);
  write_truth_csv(out / "truth.csv", g, t);
  write_clouds_csv(out / "clouds.csv", g, m);
  std::ofstream(out / "config.json") << config_to_json(cfg) << "\n";
  std::ofstream(out / "run.log") << kVersion << "\ncourant_max="
                                 << courant_report(g, w) << "\n";
  write_manifest(out, cfg, "simulate", "",
                 {out / "winds.csv", out / "truth.csv",
                  out / "truth_ghost.csv", out / "clouds.csv"});
}

void stage_observe(const RunConfig& cfg, const fs::path& scenario_dir) {
  require_file(scenario_dir / "truth.csv", "observe");
  require_file(scenario_dir / "clouds.csv", "observe");
  const Grid3D g = cfg.make_grid();
  const TruthField t = read_truth_csv(scenario_dir / "truth.csv", g);
  const CloudMask m = read_clouds_csv(scenario_dir / "clouds.csv", g);
  const ObservationSet obs =
      observe(g, t, m, cfg.noise_frac, cfg.sigma_floor, cfg.seed);
  write_observations_csv(scenario_dir / "observations.csv", g, obs);
  write_manifest(scenario_dir, cfg, "observe", "",
                 {scenario_dir / "winds.csv", scenario_dir / "truth.csv",
                  scenario_dir / "truth_ghost.csv",
                  scenario_dir / "clouds.csv",
                  scenario_dir / "observations.csv"});
}

PosteriorSummary stage_fit_bhm(const RunConfig& cfg,
                               const fs::path& scenario_dir,
                               const fs::path& out, int n_chains,
                               bool coupled) {
  require_file(scenario_dir / "observations.csv", "fit-bhm");
  require_file(scenario_dir / "winds.csv", "fit-bhm");
  fs::create_directories(out);
  const Grid3D g = cfg.make_grid();
  const ObservationSet obs =
      read_observations_csv(scenario_dir / "observations.csv", g);
  const WindField w =
      read_winds_csv(scenario_dir / "winds.csv", g, cfg.n_steps, cfg.dt);

  SamplerConfig scfg = cfg.sampler;
  scfg.coupled = coupled;
  const ModelSetup setup = build_setup(g, w, obs, cfg.priors, scfg);

  std::vector<PosteriorSummary> parts(n_chains);
  std::vector<std::future<void>> jobs;
  for (int c = 0; c < n_chains; ++c)
    jobs.push_back(std::async(std::launch::async, [&, c] {
      SamplerConfig chain_cfg = scfg;
      chain_cfg.seed = derive_seed(cfg.seed, "chain-" + std::to_string(c));
      parts[c] = run_gibbs(setup, chain_cfg);
    }));
  try {
    for (auto& f : jobs) f.get();
  } catch (const std::runtime_error& e) {
    throw numerical_error(e.what());
  }
  PosteriorSummary summary = merge_summaries(parts);

  write_field_csv(out / "field.csv", g, cfg.n_steps, summary.mean,
                  summary.sd);
  write_param_chains_csv(out / "params_chain.csv", summary.chains);
  json diag;
  diag["n_retained"] = summary.n_retained;
  diag["n_chains"] = n_chains;
  diag["burn_in"] = scfg.burn_in;
  diag["thin"] = scfg.thin;
  for (std::size_t p = 0; p < summary.diag.param_name.size(); ++p)
    diag["params"][summary.diag.param_name[p]] = {
        {"mean", summary.diag.param_mean[p]},
        {"sd", summary.diag.param_sd[p]},
        {"ess", summary.diag.param_ess[p]}};
  std::ofstream(out / "diagnostics.json") << diag.dump(2) << "\n";
  write_manifest(out, cfg, "fit-bhm",
                 coupled ? "bhm-coupled" : "bhm-uncoupled",
                 {out / "field.csv", out / "params_chain.csv",
                  out / "diagnostics.json"});
  return summary;
}

void stage_fit_kriging(const RunConfig& cfg, const fs::path& scenario_dir,
                       const fs::path& out) {
  require_file(scenario_dir / "observations.csv", "fit-kriging");
  fs::create_directories(out);
  const Grid3D g = cfg.make_grid();
  const ObservationSet obs =
      read_observations_csv(scenario_dir / "observations.csv", g);
  const int T = obs.n_steps, L = g.n_levels(), N = g.n_cells();

  std::vector<double> mean(static_cast<std::size_t>(T) * L * N, 0.0);
  std::vector<double> sd(mean.size(), 0.0);
  struct FitRow {
    int k, l;
    MleFit fit;
    bool skipped;
  };
  std::vector<FitRow> rows(static_cast<std::size_t>(T) * L);

  auto fit_one = [&](int k, int l) {
    const auto& snap = obs.obs[k][l];
    FitRow row{k, l, {}, false};
    const std::size_t base =
        (static_cast<std::size_t>(k) * L + l) * static_cast<std::size_t>(N);
    if (snap.size() < 10) {
      row.skipped = true;
      double fill = 0;
      for (const auto& o : snap) fill += o.value;
      fill = snap.empty() ? 0.0 : fill / snap.size();
      for (int i = 0; i < N; ++i) mean[base + i] = fill;
    } else {
      double nugget = 0;
      for (const auto& o : snap) {
        const double s = std::max(cfg.noise_frac * o.value, cfg.sigma_floor);
        nugget += s * s;
      }
      nugget /= snap.size();
      row.fit = mle_fit(g, snap, nugget, cfg.kriging,
                        derive_seed(cfg.seed, "krige") + k * 64 + l);
      const KrigeResult kr = krige_predict(g, snap, row.fit.params);
      for (int i = 0; i < N; ++i) {
        mean[base + i] = kr.mean[i];
        sd[base + i] = std::sqrt(kr.variance[i]);
      }
    }
    rows[static_cast<std::size_t>(k) * L + l] = row;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  std::atomic<int> next{0};
  for (unsigned t = 0; t < hw; ++t)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (int idx; (idx = next.fetch_add(1)) < T * L;)
        fit_one(idx / L, idx % L);
    }));
  for (auto& f : jobs) f.get();

  write_field_csv(out / "field.csv", g, T, mean, sd);
  {
    std::ofstream fits(out / "kriging_fits.csv");
    fits << "k,l,sigma2,rho_m,nugget,loglik,degenerate,skipped\n";
    for (const auto& r : rows)
      fits << r.k + 1 << ',' << r.l + 1 << ',' << r.fit.params.sigma2 << ','
           << r.fit.params.rho << ',' << r.fit.params.nugget << ','
           << r.fit.loglik << ',' << (r.fit.degenerate ? 1 : 0) << ','
           << (r.skipped ? 1 : 0) << '\n';
  }
  write_manifest(out, cfg, "fit-kriging", "kriging",
                 {out / "field.csv", out / "kriging_fits.csv"});
}

EvalReport stage_evaluate(const fs::path& scenario_dir,
                          const std::vector<fs::path>& run_dirs, int level,
                          const fs::path& out) {
  const json sm = read_manifest(scenario_dir, "evaluate");
  const RunConfig cfg = config_from_manifest(sm);
  const Grid3D g = cfg.make_grid();
  if (level < 0) level = g.n_levels() / 2;
  if (level >= g.n_levels())
    throw std::invalid_argument("evaluate: level index " +
                                std::to_string(level) + " out of range for " +
                                std::to_string(g.n_levels()) + " levels");
  require_file(scenario_dir / "truth.csv", "evaluate");
  const TruthField truth = read_truth_csv(scenario_dir / "truth.csv", g);
  const CloudMask mask = read_clouds_csv(scenario_dir / "clouds.csv", g);
  const std::string sid = sm.at("scenario_id").get<std::string>();

  std::vector<MethodRun> runs;
  for (const auto& dir : run_dirs) {
    const json m = read_manifest(dir, "evaluate");
    if (m.at("scenario_id").get<std::string>() != sid)
      throw missing_artifact_error(
          "evaluate: run " + dir.string() +
          " belongs to a different scenario than the truth directory");
    require_file(dir / "field.csv", "evaluate");
    std::vector<double> mean, sd;
    read_field_csv(dir / "field.csv", g, truth.n_steps, mean, sd);
    MethodRun run;
    run.name = m.value("method", dir.filename().string());
    run.mean.assign(truth.n_steps,
                    std::vector<std::vector<double>>(
                        g.n_levels(), std::vector<double>(g.n_cells())));
    run.sd = run.mean;
    std::size_t j = 0;
    for (int k = 0; k < truth.n_steps; ++k)
      for (int l = 0; l < g.n_levels(); ++l)
        for (int i = 0; i < g.n_cells(); ++i, ++j) {
          run.mean[k][l][i] = mean[j];
          run.sd[k][l][i] = sd[j];
        }
    runs.push_back(std::move(run));
  }

  const EvalReport rep = build_report(runs, truth, mask, level);

  fs::create_directories(out);
  json rj;
  rj["level"] = level + 1;
  rj["scenario_id"] = sid;
  for (const auto& m : rep.methods)
    rj["methods"][m.name] = {{"rmse_all", m.rmse_all},
                             {"rmse_unobserved", m.rmse_unobserved},
                             {"n_negative_estimates", m.n_negative_estimates}};
  std::ofstream(out / "report.json") << rj.dump(2) << "\n";
  {
    std::ofstream tab(out / "tables.csv");
    tab << "method,rmse_unobserved,rmse_all,n_negative\n";
    for (const auto& m : rep.methods)
      tab << m.name << ',' << m.rmse_unobserved << ',' << m.rmse_all << ','
          << m.n_negative_estimates << '\n';
  }
  {
    std::ofstream ser(out / "rmse_series.csv");
    ser << "method,k,rmse_all,rmse_unobserved\n";
    for (const auto& m : rep.methods)
      for (std::size_t k = 0; k < m.rmse_series_all.size(); ++k)
        ser << m.name << ',' << k + 1 << ',' << m.rmse_series_all[k] << ','
            << m.rmse_series_unobserved[k] << '\n';
  }
  return rep;
}

}  // namespace coassim
