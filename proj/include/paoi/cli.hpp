#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "paoi/model.hpp"
#include "paoi/sim.hpp"

namespace paoi::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat experiment description; dB/dBm values stay raw so that parse then
// serialize is idempotent, conversion happens once in phy().
struct ExperimentConfig {
  double tx_power_dbm = 23.0;
  double bs_density = 3.0 / (250.0 * 250.0 * 3.14159265358979323846);
  double pathloss_exp = 4.5;
  double active_prob = 1.0;
  double sinr_threshold_db = 0.0;
  double arrival_rate = 0.05;

  int num_files = 30;
  double zipf_skew = 0.8;
  int cache_size = 5;

  std::string strategy = "uc";  // optimal | mpc | uc | explicit
  std::vector<double> explicit_policy;

  std::vector<double> theta_db_grid;
  std::vector<double> zeta_grid;
  std::vector<int> cache_grid;
  std::vector<std::string> strategies;  // sweep-cache; empty = all three

  double sim_region_radius = 2500.0;
  int sim_num_realizations = 50;
  int sim_slots = 20000;
  int sim_warmup = 2000;
  std::uint64_t sim_seed = 1;

  std::string output_path;

  PhyParams phy() const;
  PhyParams phy_at_theta_db(double theta_db) const;
  TrafficParams traffic() const;
  Catalog catalog() const;
  Catalog catalog_at_cache(int cache) const;
  CachingPolicy policy(const Catalog& cat, const PhyParams& p) const;
  SimConfig sim(const std::vector<int>& track = {}) const;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitValidation = 3;

int cmd_sweep_theta(const ExperimentConfig& cfg, std::ostream& diag);
int cmd_sweep_cache(const ExperimentConfig& cfg, std::ostream& diag);
int cmd_optimize(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& diag);

struct ValidateOptions {
  bool flip_interference_sign = false;  // negative control
  bool unscaled_w_argument = false;     // negative control
};

int cmd_validate(const ExperimentConfig& cfg, const ValidateOptions& opts,
                 std::ostream& out, std::ostream& diag);

}  // namespace paoi::cli
