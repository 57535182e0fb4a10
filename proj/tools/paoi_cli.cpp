#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paoi/analytic.hpp"
#include "paoi/cli.hpp"

namespace {

struct Overrides {
  std::optional<double> power_dbm, density, alpha, beta, theta_db, zeta;
  std::optional<int> num_files, cache_size;
  std::optional<double> skew;
  std::optional<std::string> strategy, output;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations, slots, warmup;
  std::optional<double> radius;
  std::vector<double> theta_grid, zeta_grid;
  std::vector<int> cache_grid;
  std::vector<std::string> strategies;
};

void apply(const Overrides& ov, paoi::cli::ExperimentConfig& cfg) {
  if (ov.power_dbm) cfg.tx_power_dbm = *ov.power_dbm;
  if (ov.density) cfg.bs_density = *ov.density;
  if (ov.alpha) cfg.pathloss_exp = *ov.alpha;
  if (ov.beta) cfg.active_prob = *ov.beta;
  if (ov.theta_db) cfg.sinr_threshold_db = *ov.theta_db;
  if (ov.zeta) cfg.arrival_rate = *ov.zeta;
  if (ov.num_files) cfg.num_files = *ov.num_files;
  if (ov.cache_size) cfg.cache_size = *ov.cache_size;
  if (ov.skew) cfg.zipf_skew = *ov.skew;
  if (ov.strategy) cfg.strategy = *ov.strategy;
  if (ov.output) cfg.output_path = *ov.output;
  if (ov.seed) cfg.sim_seed = *ov.seed;
  if (ov.realizations) cfg.sim_num_realizations = *ov.realizations;
  if (ov.slots) cfg.sim_slots = *ov.slots;
  if (ov.warmup) cfg.sim_warmup = *ov.warmup;
  if (ov.radius) cfg.sim_region_radius = *ov.radius;
  if (!ov.theta_grid.empty()) cfg.theta_db_grid = ov.theta_grid;
  if (!ov.zeta_grid.empty()) cfg.zeta_grid = ov.zeta_grid;
  if (!ov.cache_grid.empty()) cfg.cache_grid = ov.cache_grid;
  if (!ov.strategies.empty()) cfg.strategies = ov.strategies;
}

void add_common(CLI::App* cmd, std::string& config_path, Overrides& ov) {
  cmd->add_option("--config", config_path, "JSON experiment configuration");
  cmd->add_option("--power-dbm", ov.power_dbm, "transmit power, dBm");
  cmd->add_option("--density", ov.density, "BS density, per square meter");
  cmd->add_option("--alpha", ov.alpha, "path loss exponent");
  cmd->add_option("--beta", ov.beta, "BS active probability");
  cmd->add_option("--theta-db", ov.theta_db, "SINR threshold, dB");
  cmd->add_option("--zeta", ov.zeta, "packet arrival rate per slot");
  cmd->add_option("--num-files", ov.num_files, "catalog size");
  cmd->add_option("--cache-size", ov.cache_size, "per-BS cache capacity");
  cmd->add_option("--skew", ov.skew, "Zipf popularity skew");
  cmd->add_option("--strategy", ov.strategy, "optimal | mpc | uc | explicit");
  cmd->add_option("--output", ov.output, "CSV output path (default stdout)");
  cmd->add_option("--seed", ov.seed, "simulation seed");
  cmd->add_option("--realizations", ov.realizations, "spatial realizations");
  cmd->add_option("--slots", ov.slots, "slots per realization");
  cmd->add_option("--warmup", ov.warmup, "warmup slots");
  cmd->add_option("--radius", ov.radius, "simulation region radius, meters");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peak age of information of a cache-enabled cellular network"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  paoi::cli::ValidateOptions vopts;

  CLI::App* sweep_theta =
      app.add_subcommand("sweep-theta", "Weighted peak age over a SINR threshold grid");
  add_common(sweep_theta, config_path, ov);
  sweep_theta->add_option("--theta-grid", ov.theta_grid, "SINR grid, dB");
  sweep_theta->add_option("--zeta-grid", ov.zeta_grid, "arrival rate values");

  CLI::App* sweep_cache =
      app.add_subcommand("sweep-cache", "Weighted peak age over a cache size grid");
  add_common(sweep_cache, config_path, ov);
  sweep_cache->add_option("--cache-grid", ov.cache_grid, "cache size grid");
  sweep_cache->add_option("--strategies", ov.strategies,
                          "subset of optimal, mpc, uc");

  CLI::App* optimize =
      app.add_subcommand("optimize", "Optimal caching probabilities");
  add_common(optimize, config_path, ov);

  CLI::App* validate =
      app.add_subcommand("validate", "Analytic vs Monte Carlo arbitration");
  add_common(validate, config_path, ov);
  validate->add_flag("--flip-sign", vopts.flip_interference_sign,
                     "negative control: mis-signed interference terms");
  validate->add_flag("--unscaled-w", vopts.unscaled_w_argument,
                     "negative control: drop the muting scale from the "
                     "hypergeometric argument");

  CLI11_PARSE(app, argc, argv);

  try {
    paoi::cli::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = paoi::cli::parse_config_file(config_path);
    apply(ov, cfg);

    if (sweep_theta->parsed())
      return paoi::cli::cmd_sweep_theta(cfg, std::cerr);
    if (sweep_cache->parsed())
      return paoi::cli::cmd_sweep_cache(cfg, std::cerr);
    if (optimize->parsed())
      return paoi::cli::cmd_optimize(cfg, std::cout, std::cerr);
    return paoi::cli::cmd_validate(cfg, vopts, std::cout, std::cerr);
  } catch (const paoi::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return paoi::cli::kExitConfig;
  } catch (const paoi::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return paoi::cli::kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return paoi::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return paoi::cli::kExitValidation;
  }
}
