#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coassim/dynamics.hpp"
#include "coassim/io.hpp"
#include "coassim/pipeline.hpp"

namespace fs = std::filesystem;
using namespace coassim;

namespace {

struct GlobalOpts {
  std::string config_file;
  std::string out = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int chains = 1;
  bool coupled = true;
  int level = -1;  // 0-based; -1 = middle level
};

RunConfig resolve_config(const GlobalOpts& g) {
  RunConfig cfg =
      g.config_file.empty() ? default_config() : load_config(g.config_file);
  if (g.seed_given) {
    cfg.seed = g.seed;
    cfg.seed_set = true;
  }
  if (!cfg.seed_set)
    throw config_error("a master seed is required (config \"seed\" or --seed)");
  return cfg;
}

int run_simulate(const GlobalOpts& g) {
  const RunConfig cfg = resolve_config(g);
  stage_simulate(cfg, g.out);
  const Grid3D grid = cfg.make_grid();
  const WindField w = read_winds_csv(fs::path(g.out) / "winds.csv", grid,
                                     cfg.n_steps, cfg.dt);
  const double c = courant_report(grid, w);
  std::cout << "simulate: wrote " << g.out << " (max Courant " << c << ")\n";
  if (c > 1.0)
    std::cout << "warning: Courant number exceeds 1; the Euler-centered "
                 "transition will amplify noise\n";
  return 0;
}

int run_observe(const GlobalOpts& g) {
  stage_observe(resolve_config(g), g.out);
  std::cout << "observe: wrote " << g.out << "/observations.csv\n";
  return 0;
}

int run_fit_bhm(const GlobalOpts& g, const std::string& scenario) {
  const RunConfig cfg = resolve_config(g);
  stage_fit_bhm(cfg, scenario, g.out, g.chains, g.coupled);
  std::cout << "fit-bhm (" << (g.coupled ? "coupled" : "uncoupled")
            << "): wrote " << g.out << "\n";
  return 0;
}

int run_fit_kriging(const GlobalOpts& g, const std::string& scenario) {
  stage_fit_kriging(resolve_config(g), scenario, g.out);
  std::cout << "fit-kriging: wrote " << g.out << "\n";
  return 0;
}

int run_evaluate(const GlobalOpts& g, const std::string& truth_dir,
                 const std::vector<std::string>& run_dirs) {
  std::vector<fs::path> dirs(run_dirs.begin(), run_dirs.end());
  const EvalReport rep = stage_evaluate(truth_dir, dirs, g.level, g.out);
  for (const auto& m : rep.methods)
    std::cout << m.name << ": rmse(all)=" << m.rmse_all
              << " rmse(unobserved)=" << m.rmse_unobserved << "\n";
  return 0;
}

int run_all(const GlobalOpts& g) {
  const RunConfig cfg = resolve_config(g);
  const fs::path root = g.out;
  const fs::path scen = root / "scenario";
  stage_simulate(cfg, scen);
  stage_observe(cfg, scen);
  stage_fit_bhm(cfg, scen, root / "bhm-coupled", g.chains, true);
  stage_fit_bhm(cfg, scen, root / "bhm-uncoupled", g.chains, false);
  stage_fit_kriging(cfg, scen, root / "kriging");
  GlobalOpts ge = g;
  ge.out = (root / "report").string();
  return run_evaluate(ge, scen.string(),
                      {(root / "bhm-coupled").string(),
                       (root / "bhm-uncoupled").string(),
                       (root / "kriging").string()});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud-gap interpolation of 3-D+time CO fields: hybrid "
               "physical-statistical Gibbs sampler, kriging baseline, and "
               "evaluation harness"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.fallthrough();  // global options may follow the subcommand name
  app.add_option("--config", g.config_file, "JSON run configuration");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--seed", g.seed, "master seed (overrides config)")
      ->each([&g](const std::string&) { g.seed_given = true; });
  app.add_option("--chains", g.chains, "independent MCMC chains");
  app.add_flag("--coupled,!--uncoupled", g.coupled,
               "sample the vertical forcing f (default) or force f == 0");
  app.add_option("--level", g.level,
                 "0-based level index for evaluation tables");

  auto* simulate = app.add_subcommand("simulate", "synthesize winds, truth, clouds");
  auto* observe = app.add_subcommand("observe", "draw cloud-masked noisy observations");
  auto* fit_bhm = app.add_subcommand("fit-bhm", "run the Gibbs sampler");
  auto* fit_krig = app.add_subcommand("fit-kriging", "per-snapshot Matern-2.5 kriging");
  auto* evaluate = app.add_subcommand("evaluate", "RMSE report across method runs");
  auto* all = app.add_subcommand("all", "full pipeline into one directory tree");

  std::string scenario = "out";
  fit_bhm->add_option("--scenario", scenario, "scenario directory");
  fit_krig->add_option("--scenario", scenario, "scenario directory");
  std::string truth_dir;
  std::vector<std::string> run_dirs;
  evaluate->add_option("--truth", truth_dir, "scenario directory")->required();
  evaluate->add_option("--runs", run_dirs, "method run directories")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(g);
    if (observe->parsed()) return run_observe(g);
    if (fit_bhm->parsed()) return run_fit_bhm(g, scenario);
    if (fit_krig->parsed()) return run_fit_kriging(g, scenario);
    if (evaluate->parsed()) return run_evaluate(g, truth_dir, run_dirs);
    if (all->parsed()) return run_all(g);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const missing_artifact_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
