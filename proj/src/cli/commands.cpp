#include "paoi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "paoi/analytic.hpp"
#include "paoi/optimize.hpp"
#include "paoi/sim.hpp"

namespace paoi::cli {

namespace {

// Emission boundary: every number is finite or the literal `inf`; NaN is a
// programming error and must never reach output.
std::string fmt(double v) {
  if (std::isnan(v)) throw std::logic_error("NaN reached the output boundary");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

template <typename T>
void require_sorted_grid(const std::vector<T>& grid, const char* name) {
  if (grid.empty())
    throw ConfigError(std::string("sweep.") + name + ": grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw ConfigError(std::string("sweep.") + name + ": grid must be sorted");
  for (T v : grid) {
    if (!(v == v) || v - v != 0)
      throw ConfigError(std::string("sweep.") + name + ": grid must be finite");
  }
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("output_path: cannot open '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double weighted_or_inf(const ExperimentConfig& cfg, const Catalog& cat,
                       const PhyParams& phy, const CachingPolicy& pol) {
  return paoi_theorem1(pol, cat, phy, cfg.traffic()).weighted_paoi_cached;
}

}  // namespace

int cmd_sweep_theta(const ExperimentConfig& cfg, std::ostream& diag) {
  require_sorted_grid(cfg.theta_db_grid, "theta_db");
  std::vector<double> zetas = cfg.zeta_grid;
  if (zetas.empty()) zetas.push_back(cfg.arrival_rate);
  require_sorted_grid(zetas, "zeta");

  Sink sink(cfg.output_path);
  std::ostream& out = sink.stream();
  out << "theta_db,zeta,paoi_weighted,feasible\n";
  const Catalog cat = cfg.catalog();
  for (double zeta : zetas) {
    ExperimentConfig point = cfg;
    point.arrival_rate = zeta;
    for (double theta_db : cfg.theta_db_grid) {
      const PhyParams phy = point.phy_at_theta_db(theta_db);
      double value;
      try {
        const CachingPolicy pol = point.policy(cat, phy);
        value = weighted_or_inf(point, cat, phy, pol);
      } catch (const InfeasibleError& e) {
        diag << "warning: theta_db=" << fmt(theta_db) << " zeta=" << fmt(zeta)
             << ": " << e.what() << "\n";
        value = std::numeric_limits<double>::infinity();
      }
      out << fmt(theta_db) << ',' << fmt(zeta) << ',' << fmt(value) << ','
          << (std::isfinite(value) ? 1 : 0) << "\n";
    }
  }
  return kExitOk;
}

int cmd_sweep_cache(const ExperimentConfig& cfg, std::ostream& diag) {
  require_sorted_grid(cfg.cache_grid, "cache_size");
  std::vector<std::string> strategies = cfg.strategies;
  if (strategies.empty()) strategies = {"optimal", "mpc", "uc"};
  for (const auto& s : strategies) {
    if (s != "optimal" && s != "mpc" && s != "uc")
      throw ConfigError("sweep.strategies: unknown strategy '" + s + "'");
  }

  Sink sink(cfg.output_path);
  std::ostream& out = sink.stream();
  out << "cache_size,strategy,paoi_weighted\n";
  const PhyParams phy = cfg.phy();
  for (int c : cfg.cache_grid) {
    const Catalog cat = cfg.catalog_at_cache(c);
    for (const auto& s : strategies) {
      double value;
      try {
        ExperimentConfig point = cfg;
        point.strategy = s;
        point.cache_size = c;
        value = weighted_or_inf(point, cat, phy, point.policy(cat, phy));
      } catch (const InfeasibleError& e) {
        diag << "warning: cache_size=" << c << " strategy=" << s << ": "
             << e.what() << "\n";
        value = std::numeric_limits<double>::infinity();
      }
      out << c << ',' << s << ',' << fmt(value) << "\n";
    }
  }
  return kExitOk;
}

int cmd_optimize(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& diag) {
  const Catalog cat = cfg.catalog();
  const PhyParams phy = cfg.phy();
  OptimizationResult res;
  try {
    res = optimal_caching(cat, phy, cfg.traffic());
  } catch (const InfeasibleError& e) {
    diag << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }
  double sum = 0.0;
  for (double q : res.policy.probs) sum += q;
  out << "multiplier " << fmt(res.multiplier) << "\n";
  out << "objective " << fmt(res.objective) << "\n";
  out << "capacity_sum " << fmt(sum) << "\n";
  out << "clamped_low";
  for (int f : res.clamped_low) out << ' ' << f;
  out << "\nclamped_high";
  for (int f : res.clamped_high) out << ' ' << f;
  out << "\n";
  for (int f = 0; f < cat.num_files; ++f)
    out << "q " << f << ' ' << fmt(res.policy.probs[f]) << "\n";
  if (!cfg.output_path.empty()) {
    Sink sink(cfg.output_path);
    sink.stream() << "file,popularity,q_opt\n";
    for (int f = 0; f < cat.num_files; ++f)
      sink.stream() << f << ',' << fmt(cat.popularity[f]) << ','
                    << fmt(res.policy.probs[f]) << "\n";
  }
  return kExitOk;
}

namespace {

struct PinnedConfig {
  double alpha;
  double beta;
  double theta_db;
  double zeta;
  int num_files;  // uniform popularity, cache size 1: q = 1/F everywhere
};

// Feasible operating points: every entry keeps the analytic peak age finite
// with margin so the simulated queues stay stable.
constexpr PinnedConfig kPinned[] = {
    {4.5, 1.0, -10.0, 0.02, 1}, {4.5, 1.0, -6.0, 0.02, 1},
    {3.5, 1.0, -10.0, 0.02, 1}, {4.5, 0.7, -10.0, 0.02, 1},
    {3.5, 0.7, -12.0, 0.02, 1}, {4.5, 1.0, -14.0, 0.05, 1},
    {4.5, 1.0, -16.0, 0.02, 2}, {4.5, 0.7, -18.0, 0.02, 2},
    {4.5, 0.5, -3.0, 0.05, 1},  {3.5, 0.5, -4.0, 0.05, 1},
};

}  // namespace

int cmd_validate(const ExperimentConfig& cfg, const ValidateOptions& opts,
                 std::ostream& out, std::ostream& diag) {
  AnalyticVariant variant;
  variant.flip_interference_sign = opts.flip_interference_sign;
  variant.unscaled_w_argument = opts.unscaled_w_argument;

  std::ostringstream csv;
  csv << "id,alpha,beta,theta_db,zeta,q,theorem,corollary,sim_mean,sim_ci,pass\n";

  bool all_pass = true;
  int id = 0;
  for (const PinnedConfig& pc : kPinned) {
    ++id;
    const PhyParams phy = PhyParams::from_db(cfg.tx_power_dbm, cfg.bs_density,
                                             pc.alpha, pc.beta, pc.theta_db);
    const TrafficParams traffic{pc.zeta};
    const Catalog cat = make_catalog(zipf_popularity(pc.num_files, 0.0), 1);
    const CachingPolicy pol = uc_policy(cat);
    const double q = pol.probs[0];

    double theorem, corollary;
    try {
      theorem = paoi_theorem1(pol, cat, phy, traffic, {}, variant)
                    .per_file_paoi[0];
      corollary = paoi_corollary1(pol, cat, phy, traffic).per_file_paoi[0];
    } catch (const SeriesError& e) {
      diag << "config " << id << ": series failure: " << e.what() << "\n";
      all_pass = false;
      continue;
    }

    SimConfig sc = cfg.sim({0});
    sc.rng_seed = cfg.sim_seed + static_cast<std::uint64_t>(id);
    const SimResult sr = estimate(pol, cat, phy, traffic, sc);
    const Estimate est = sr.per_file_peak_age[0];
    if (!sr.unstable_files.empty())
      diag << "config " << id << ": "
           << sr.unstable_realizations[0] << " unstable realizations\n";

    bool pass;
    if (!std::isfinite(theorem) || est.n == 0) {
      pass = false;
    } else {
      pass = std::abs(est.mean - theorem) <= 0.05 * theorem + est.ci_half;
    }
    all_pass = all_pass && pass;
    csv << id << ',' << fmt(pc.alpha) << ',' << fmt(pc.beta) << ','
        << fmt(pc.theta_db) << ',' << fmt(pc.zeta) << ',' << fmt(q) << ','
        << fmt(theorem) << ',' << fmt(corollary) << ',' << fmt(est.mean) << ','
        << fmt(est.ci_half) << ',' << (pass ? 1 : 0) << "\n";
    out << "config " << id << ": theorem=" << fmt(theorem)
        << " corollary=" << fmt(corollary) << " sim=" << fmt(est.mean) << "+-"
        << fmt(est.ci_half) << " -> " << (pass ? "pass" : "FAIL") << "\n";
  }
  out << (all_pass ? "validation passed" : "validation FAILED") << "\n";
  Sink sink(cfg.output_path);
  sink.stream() << csv.str();
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace paoi::cli
