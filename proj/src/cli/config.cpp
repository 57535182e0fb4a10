#include "paoi/cli.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "paoi/optimize.hpp"

namespace paoi::cli {

using nlohmann::json;

PhyParams ExperimentConfig::phy() const {
  return phy_at_theta_db(sinr_threshold_db);
}

PhyParams ExperimentConfig::phy_at_theta_db(double theta_db) const {
  try {
    return PhyParams::from_db(tx_power_dbm, bs_density, pathloss_exp,
                              active_prob, theta_db);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("phy: ") + e.what());
  }
}

TrafficParams ExperimentConfig::traffic() const {
  TrafficParams t{arrival_rate};
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("traffic.arrival_rate: ") + e.what());
  }
  return t;
}

Catalog ExperimentConfig::catalog() const { return catalog_at_cache(cache_size); }

Catalog ExperimentConfig::catalog_at_cache(int cache) const {
  try {
    return make_catalog(zipf_popularity(num_files, zipf_skew), cache);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("catalog: ") + e.what());
  }
}

CachingPolicy ExperimentConfig::policy(const Catalog& cat,
                                       const PhyParams& p) const {
  if (strategy == "uc") return uc_policy(cat);
  if (strategy == "mpc") return mpc_policy(cat);
  if (strategy == "optimal") return optimal_caching(cat, p, traffic()).policy;
  if (strategy == "explicit") {
    try {
      return make_policy(explicit_policy, cat.cache_size);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("strategy.explicit: ") + e.what());
    }
  }
  throw ConfigError("strategy: unknown value '" + strategy +
                    "' (expected optimal, mpc, uc, or explicit)");
}

SimConfig ExperimentConfig::sim(const std::vector<int>& track) const {
  SimConfig s;
  s.region_radius = sim_region_radius;
  s.num_realizations = sim_num_realizations;
  s.slots_per_realization = sim_slots;
  s.warmup_slots = sim_warmup;
  s.rng_seed = sim_seed;
  s.track_files = track;
  return s;
}

namespace {

template <typename T>
void read_field(const json& j, const std::string& path, const char* key,
                T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "." + key + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  if (j.contains("phy")) {
    const json& p = j["phy"];
    read_field(p, "phy", "tx_power_dbm", cfg.tx_power_dbm);
    read_field(p, "phy", "bs_density", cfg.bs_density);
    read_field(p, "phy", "pathloss_exp", cfg.pathloss_exp);
    read_field(p, "phy", "active_prob", cfg.active_prob);
    read_field(p, "phy", "sinr_threshold_db", cfg.sinr_threshold_db);
  }
  if (j.contains("traffic"))
    read_field(j["traffic"], "traffic", "arrival_rate", cfg.arrival_rate);
  if (j.contains("catalog")) {
    const json& c = j["catalog"];
    read_field(c, "catalog", "num_files", cfg.num_files);
    read_field(c, "catalog", "zipf_skew", cfg.zipf_skew);
    read_field(c, "catalog", "cache_size", cfg.cache_size);
  }
  read_field(j, "config", "strategy", cfg.strategy);
  read_field(j, "config", "explicit_policy", cfg.explicit_policy);
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    read_field(s, "sweep", "theta_db", cfg.theta_db_grid);
    read_field(s, "sweep", "zeta", cfg.zeta_grid);
    read_field(s, "sweep", "cache_size", cfg.cache_grid);
    read_field(s, "sweep", "strategies", cfg.strategies);
  }
  if (j.contains("sim")) {
    const json& s = j["sim"];
    read_field(s, "sim", "region_radius", cfg.sim_region_radius);
    read_field(s, "sim", "num_realizations", cfg.sim_num_realizations);
    read_field(s, "sim", "slots_per_realization", cfg.sim_slots);
    read_field(s, "sim", "warmup_slots", cfg.sim_warmup);
    read_field(s, "sim", "rng_seed", cfg.sim_seed);
  }
  read_field(j, "config", "output_path", cfg.output_path);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json j;
  j["phy"] = {{"tx_power_dbm", cfg.tx_power_dbm},
              {"bs_density", cfg.bs_density},
              {"pathloss_exp", cfg.pathloss_exp},
              {"active_prob", cfg.active_prob},
              {"sinr_threshold_db", cfg.sinr_threshold_db}};
  j["traffic"] = {{"arrival_rate", cfg.arrival_rate}};
  j["catalog"] = {{"num_files", cfg.num_files},
                  {"zipf_skew", cfg.zipf_skew},
                  {"cache_size", cfg.cache_size}};
  j["strategy"] = cfg.strategy;
  if (!cfg.explicit_policy.empty()) j["explicit_policy"] = cfg.explicit_policy;
  json sweep;
  if (!cfg.theta_db_grid.empty()) sweep["theta_db"] = cfg.theta_db_grid;
  if (!cfg.zeta_grid.empty()) sweep["zeta"] = cfg.zeta_grid;
  if (!cfg.cache_grid.empty()) sweep["cache_size"] = cfg.cache_grid;
  if (!cfg.strategies.empty()) sweep["strategies"] = cfg.strategies;
  if (!sweep.empty()) j["sweep"] = sweep;
  j["sim"] = {{"region_radius", cfg.sim_region_radius},
              {"num_realizations", cfg.sim_num_realizations},
              {"slots_per_realization", cfg.sim_slots},
              {"warmup_slots", cfg.sim_warmup},
              {"rng_seed", cfg.sim_seed}};
  if (!cfg.output_path.empty()) j["output_path"] = cfg.output_path;
  return j.dump(2) + "\n";
}

}  // namespace paoi::cli
